#include <stdio.h>
#include "inflator_ffi.h"

int main(void) {
    Inflator *h = NULL;
    size_t d = 0;
    if (inflator_new("gerald", &h) != INFLATOR_STATUS_OK || inflator_degree(h, &d) != INFLATOR_STATUS_OK) {
        fprintf(stderr, "%s\n", inflator_last_error());
        return 1;
    }
    printf("degree %zu\n", d);
    inflator_free(h);

    Lattice *l = NULL;
    size_t rk0 = 0, rkb = 0;
    if (inflator_lattice_new("{\"elements\": 5, \"covers\": [[0,1],[0,2],[0,3],[1,4],[2,4],[3,4]]}", &l) != INFLATOR_STATUS_OK
        || inflator_lattice_rank(l, &rk0, &rkb) != INFLATOR_STATUS_OK) {
        fprintf(stderr, "%s\n", inflator_last_error());
        return 1;
    }
    printf("rk0 %zu\n", rk0);
    inflator_lattice_free(l);

    if (inflator_new("nope", &h) != INFLATOR_STATUS_PARSE || inflator_last_error() == NULL) {
        return 1;
    }
    return 0;
}
