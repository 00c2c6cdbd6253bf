#include "zeq.h"
#include <stdio.h>
#include <assert.h>

int main(void) {
    double v = 0.0;
    assert(zeq_theta(100.0, &v) == ZEQ_STATUS_OK);
    ZeqZeroTable *table = NULL;
    assert(zeq_table_find(0.0, 100.0, &table) == ZEQ_STATUS_OK);
    assert(zeq_table_len(table) == 29);
    double g = 0.0;
    assert(zeq_table_gamma(table, 0, &g) == ZEQ_STATUS_OK);
    printf("theta(100) = %.6f, gamma_1 = %.9f\n", v, g);
    zeq_table_free(table);
    return 0;
}
