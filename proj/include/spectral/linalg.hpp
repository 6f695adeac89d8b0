#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace spectral {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense complex square matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

    static CMatrix identity(int dim);

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    CMatrix adjoint() const;

    double frobenius_norm() const;
    double inf_norm() const;     // max absolute row sum
    double max_abs() const;
    bool all_finite() const;

    const std::vector<cplx>& data() const { return a_; }

private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CVector operator*(const CMatrix& a, const CVector& x);

// Hermitian wrapper: construction checks entries[i][j] == conj(entries[j][i])
// within an absolute tolerance.
struct HermitianMatrix {
    CMatrix m;
    static HermitianMatrix from(const CMatrix& a, double tol = 1e-12);
};

// Solves Ax = b with partial pivoting. Throws SingularMatrix when every pivot
// candidate falls below 1e-13 * max|entry| of the input.
CVector lu_solve(const CMatrix& a, const CVector& b);

// Full inverse by LU with partial pivoting (resolvents, I + K_N).
CMatrix lu_inverse(const CMatrix& a);

struct EigenResult {
    std::vector<double> values; // ascending
    CMatrix vectors;            // unitary, column k pairs with values[k]
};

// Cyclic Jacobi for Hermitian matrices. Runs until the off-diagonal Frobenius
// mass drops below 1e-12 * ||H||_F; throws NoConvergence after 100 sweeps.
EigenResult hermitian_eigen(const HermitianMatrix& h);

struct SingularResult {
    double sigma;  // largest singular value
    CVector right; // unit right singular vector
};

// Power iteration on M*M from a seeded random start; relative change 1e-12,
// at most 1e5 iterations.
SingularResult top_singular(const CMatrix& m, std::uint64_t seed = 0);

// Spectral norm and top right-singular pair through the Jacobi eigensolver on
// M*M; unlike plain power iteration this cannot stall on tied singular values.
SingularResult top_singular_eigen(const CMatrix& m);
double operator_norm(const CMatrix& m);

cplx inner_product(const CVector& x, const CVector& y); // <x,y> = sum x_i conj(y_i)
double vector_norm(const CVector& x);

} // namespace spectral
