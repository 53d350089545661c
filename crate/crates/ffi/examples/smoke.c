/* Minimal end-to-end exercise of the C API.
 *
 *   cargo build -p equibouquet-ffi
 *   cc -Wall -std=c11 -I crates/ffi/include crates/ffi/examples/smoke.c \
 *      -L target/debug -lequibouquet_ffi -lm -o smoke
 *   LD_LIBRARY_PATH=target/debug ./smoke
 */
#include "equibouquet.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    EqbBouquet *b = NULL;
    if (eqb_construction_b(3, &b) != EqbStatus_Ok) {
        fprintf(stderr, "construct failed: %s\n", eqb_last_error_message());
        return 1;
    }
    size_t genus = 0, dim = 0;
    eqb_bouquet_genus(b, &genus);
    eqb_bouquet_ambient_dim(b, &dim);
    printf("genus=%zu dim=%zu\n", genus, dim);

    double point[6];
    if (eqb_bouquet_eval(b, 1, 1.25, point, 6) != EqbStatus_Ok)
        return 2;
    double n2 = 0.0;
    for (int i = 0; i < 6; i++)
        n2 += point[i] * point[i];
    printf("|f(1, 1.25)|^2 = %.15f\n", n2);

    char *report = NULL;
    bool ok = false;
    if (eqb_verify(b, 64, 0x5EED, &report, &ok) != EqbStatus_Ok)
        return 3;
    printf("verify all_pass=%d report_bytes=%zu\n", (int)ok, strlen(report));
    eqb_string_free(report);

    char *cert = NULL;
    bool holds = false;
    if (eqb_certify(b, &cert, &holds) != EqbStatus_Ok)
        return 4;
    printf("certify holds=%d\n", (int)holds);
    eqb_string_free(cert);

    /* deliberate misuse: wrong buffer length must fail cleanly */
    EqbStatus s = eqb_bouquet_eval(b, 0, 0.0, point, 5);
    printf("bad eval status=%d msg=%s\n", (int)s, eqb_last_error_message());

    eqb_bouquet_free(b);
    return (genus == 3 && dim == 6 && ok && holds &&
            s == EqbStatus_InvalidArgument)
               ? 0
               : 9;
}
