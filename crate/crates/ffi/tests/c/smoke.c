#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "liesym.h"

#define CHECK(call)                                                    \
    do {                                                               \
        LiesymStatus s_ = (call);                                      \
        if (s_ != LIESYM_STATUS_OK) {                                  \
            char msg[256];                                             \
            liesym_last_error_message(msg, sizeof msg);                \
            fprintf(stderr, "%s failed (%d): %s\n", #call, s_, msg);   \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    LiesymSpace *space = NULL;
    CHECK(liesym_space_new("sp-u", 1, 2, &space));
    size_t size = liesym_space_matrix_size(space);
    size_t len = size * size;
    LiesymComplex *p = calloc(len, sizeof *p);
    CHECK(liesym_space_sample(space, 3, p, len));

    LiesymCandidate *phi = NULL;
    CHECK(liesym_candidate_new(space, "phi_a", 0, &phi));
    LiesymComplex lambda, mu, v, tau, kappa;
    CHECK(liesym_candidate_eigenvalues(phi, &lambda, &mu));
    CHECK(liesym_candidate_eval(phi, p, len, &v));
    CHECK(liesym_candidate_operators(phi, p, len, &tau, &kappa));
    double r = hypot(tau.re - (lambda.re * v.re - lambda.im * v.im), tau.im - (lambda.re * v.im + lambda.im * v.re));

    LiesymVerifyResult result;
    CHECK(liesym_verify(space, "all", 10, 0, 1e-8, &result));

    LiesymStatus bad = liesym_space_new("torus", 1, 1, NULL);
    printf("dim=%zu lambda=%g residual_ok=%d passed=%d bad=%d\n", liesym_space_dim(space), lambda.re, r < 1e-9,
           result.passed, bad);

    liesym_candidate_free(phi);
    liesym_space_free(space);
    free(p);
    return 0;
}
