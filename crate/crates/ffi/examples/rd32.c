/* SPDX-License-Identifier: Apache-2.0 */
/* Build: cc examples/rd32.c -Iinclude -L../../target/debug -lrevfault_ffi -o rd32 */

#include <stdio.h>
#include "revfault.h"

int main(int argc, char **argv) {
    const char *path = argc > 1 ? argv[1] : "../core/corpus/rd32.real";
    RfCircuit *c = NULL;
    RfTruthTable *t = NULL;
    RfImplicationList *nat = NULL;
    size_t wires, gates, garbage, faults, n;

    if (rf_circuit_load(path, &c) != RF_STATUS_OK) {
        fprintf(stderr, "load: %s\n", rf_last_error());
        return 1;
    }
    rf_circuit_shape(c, &wires, &gates, &garbage, &faults);
    printf("gates=%zu wires=%zu garbage=%zu faults=%zu\n", gates, wires, garbage, faults);

    if (rf_truth_table_new(c, 0, &t) != RF_STATUS_OK || rf_implications_natural(c, t, &nat) != RF_STATUS_OK) {
        fprintf(stderr, "analysis: %s\n", rf_last_error());
        return 1;
    }
    rf_implication_list_len(nat, &n);
    for (size_t i = 0; i < n; i++) {
        RfImplication imp;
        RfImpact impact;
        rf_implication_list_get(nat, i, &imp);
        rf_implication_impact(c, t, nat, i, &impact);
        printf("in=%zu out=%zu kind=%d impact=%.2f\n", imp.in_wire, imp.out_wire, (int)imp.kind, impact.impact_percent);
    }
    rf_implication_list_free(nat);
    rf_truth_table_free(t);
    rf_circuit_free(c);
    return 0;
}
