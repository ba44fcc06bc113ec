/* Minimal C client for the sds-capi library.
 *
 * Build (from the workspace root):
 *
 *   cargo build --release -p sds-capi
 *   cc -I crates/capi/include crates/capi/examples/smoke.c \
 *      target/release/libsds_capi.a -lpthread -ldl -lm -o smoke
 *   ./smoke
 */

#include <assert.h>
#include <stdint.h>
#include <stdio.h>

#include "sdscapi.h"

int main(void) {
    /* parameter feasibility */
    SdsFeasibility f;
    assert(sds_feasible(19, 13, 2, &f) == SDS_STATUS_OK);
    assert(f.feasible && f.s == 7 && f.p_size == 10 && f.n_size == 3);

    /* construct, verify, serialize */
    SdsSet *set = NULL;
    assert(sds_construct_qr(7, &set) == SDS_STATUS_OK);
    assert(sds_set_verify(set) == SDS_STATUS_OK);
    assert(sds_set_v(set) == 7 && sds_set_k(set) == 6 && sds_set_lambda(set) == -1);
    char *json = sds_set_to_json(set);
    printf("set: %s\n", json);
    sds_string_free(json);

    /* two-level autocorrelation */
    int64_t theta[7];
    assert(sds_set_autocorrelation(set, theta, 7) == SDS_STATUS_OK);
    assert(theta[0] == 6 && theta[1] == -1 && theta[6] == -1);
    sds_set_free(set);

    /* parse the wire format */
    SdsSet *parsed = NULL;
    const char *wire =
        "{\"group\":[7],\"lambda\":-1,\"P\":[[1],[2],[4]],\"N\":[[3],[5],[6]]}";
    assert(sds_set_from_json(wire, &parsed) == SDS_STATUS_OK);
    assert(sds_set_verify(parsed) == SDS_STATUS_OK);
    sds_set_free(parsed);

    /* orbit search */
    uint64_t orders[1] = {19};
    SdsGroup *g = NULL;
    assert(sds_group_new(orders, 1, &g) == SDS_STATUS_OK);
    char *report = NULL;
    assert(sds_search_json(g, 13, 2, 0, 1, &report) == SDS_STATUS_OK);
    printf("search: %s\n", report);
    sds_string_free(report);
    sds_group_free(g);

    printf("smoke test ok\n");
    return 0;
}
