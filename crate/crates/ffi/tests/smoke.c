#include <stdio.h>
#include <string.h>

#include "numsg.h"

int main(void) {
    uint32_t gens[] = {5, 7, 9};
    NumsgSemigroup *s = NULL;
    if (numsg_semigroup_from_generators(gens, 3, &s) != NUMSG_STATUS_OK) return 1;
    NumsgInvariants r;
    if (numsg_semigroup_invariants(s, &r) != NUMSG_STATUS_OK) return 2;
    printf("g=%u m=%u F=%d e=%u t=%u\n", r.genus, r.multiplicity, r.frobenius, r.embedding_dim, r.type_t);
    numsg_semigroup_free(s);

    uint64_t n = 0;
    if (numsg_count_genus(12, 1, &n) != NUMSG_STATUS_OK) return 3;
    printf("N(12)=%llu\n", (unsigned long long)n);

    uint32_t bad[] = {2, 4};
    if (numsg_semigroup_from_generators(bad, 2, &s) != NUMSG_STATUS_NOT_A_SEMIGROUP) return 4;
    printf("%s\n", numsg_status_message(NUMSG_STATUS_NOT_A_SEMIGROUP));
    return 0;
}
