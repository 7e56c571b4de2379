#pragma once

// lapacke.h must see std::complex as the complex type, otherwise its
// prototypes use C99 _Complex which C++ cannot convert implicitly.
#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

// Fortran BLAS level 3 entry points (OpenBLAS).  Only the two gemms the
// eigensolver needs; everything else goes through LAPACKE.
extern "C" {
void dgemm_(const char* transa, const char* transb, const int* m, const int* n,
            const int* k, const double* alpha, const double* a, const int* lda,
            const double* b, const int* ldb, const double* beta, double* c,
            const int* ldc);
void zgemm_(const char* transa, const char* transb, const int* m, const int* n,
            const int* k, const std::complex<double>* alpha,
            const std::complex<double>* a, const int* lda,
            const std::complex<double>* b, const int* ldb,
            const std::complex<double>* beta, std::complex<double>* c,
            const int* ldc);
}
