#include <stdio.h>
#include "cage_expander.h"

int main(void) {
    CeGraph *g = NULL;
    if (ce_graph_from_catalog("petersen", &g) != CE_STATUS_OK) {
        fprintf(stderr, "%s\n", ce_last_error_message());
        return 1;
    }
    printf("order %zu\n", ce_graph_order(g));

    uint64_t num = 0, den = 0;
    if (ce_graph_cheeger_exact(g, 26, &num, &den) != CE_STATUS_OK) return 1;
    printf("h %llu/%llu\n", (unsigned long long)num, (unsigned long long)den);

    char *s = NULL;
    if (ce_graph_to_graph6(g, &s) != CE_STATUS_OK) return 1;
    printf("graph6 %s\n", s);
    ce_string_free(s);
    ce_graph_free(g);

    uint64_t m = 0;
    if (ce_moore_bound(3, 5, &m) != CE_STATUS_OK) return 1;
    printf("moore %llu\n", (unsigned long long)m);

    CeGraph *hs = NULL;
    ce_graph_from_catalog("hoffman-singleton", &hs);
    printf("cap %d\n", (int)ce_graph_cheeger_exact(hs, 26, &num, &den));
    ce_graph_free(hs);
    return 0;
}
