/* Build: cc smoke.c -I../include ../../../target/debug/libdynamo_ffi.a -lpthread -ldl -lm */
#include <stdio.h>
#include "dynamo.h"

int main(void) {
    DmGraph *g = NULL;
    size_t params[] = {8};
    if (dm_graph_generate("cycle", params, 1, &g) != DM_STATUS_OK) {
        fprintf(stderr, "%s\n", dm_last_error());
        return 1;
    }
    DmModel m = {DM_MODEL_KIND_TWO_WAY_R, 2, 0, 0};
    size_t size = 0, witness[8];
    if (dm_search_min(g, m, DM_PROPERTY_IMMORTAL, 0, &size, witness, 8) != DM_STATUS_OK) {
        fprintf(stderr, "%s\n", dm_last_error());
        return 1;
    }
    printf("min immortal %zu:", size);
    for (size_t i = 0; i < size; i++) printf(" %zu", witness[i]);
    printf("\n");

    size_t bad[] = {42};
    DmVerdict v;
    DmStatus st = dm_certify(g, m, DM_PROPERTY_DYNAMO, bad, 1, 0, &v);
    printf("status %d: %s\n", (int)st, dm_last_error());
    dm_graph_free(g);
    return st == DM_STATUS_NODE_OUT_OF_RANGE ? 0 : 1;
}
