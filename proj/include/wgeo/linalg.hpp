#pragma once

#include <vector>

#include "wgeo/matrix.hpp"
#include "wgeo/parallel.hpp"
#include "wgeo/rational.hpp"

namespace wgeo {

using Mat = Matrix<Rational>;
using Vec = std::vector<Rational>;

// index pairs (a,b), a < b, in lexicographic order
int pair_count(int size);
int pair_index(int a, int b, int size);

struct RrefResult {
    Mat R;
    std::vector<int> pivots;  // pivot column per pivot row
    int rank = 0;
};

// Reduced row echelon form. Forward phase uses fraction-free Bareiss
// elimination on an integer-rescaled copy to bound coefficient growth,
// followed by rational back-substitution. Row updates run through
// parallel_for under the chosen policy.
RrefResult rref(const Mat& m, Exec ex = Exec::par);

// right kernel as a canonical subspace
class Subspace;
Subspace kernel(const Mat& m, Exec ex = Exec::par);

// Linear subspace of Q^ambient in canonical form: the basis matrix is the
// RREF of any spanning set, so equal subspaces compare equal structurally.
class Subspace {
public:
    Subspace() : ambient_(0) {}
    explicit Subspace(int ambient) : ambient_(ambient) {}
    static Subspace from_rows(int ambient, const std::vector<Vec>& rows, Exec ex = Exec::par);
    static Subspace full(int ambient);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;  // Zassenhaus

private:
    int ambient_;
    Mat basis_;  // dim x ambient, RREF
    friend Subspace kernel(const Mat&, Exec);
};

// Incrementally maintained RREF span; insert() reports whether the vector
// enlarged the span.
class SpanBuilder {
public:
    explicit SpanBuilder(int ambient) : ambient_(ambient) {}
    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    bool insert(Vec v);          // true if new direction
    bool contains(Vec v) const;
    // coordinates of v in terms of the inserted independent generators;
    // empty optional when v is outside the span
    Subspace subspace() const;

private:
    void reduce(Vec& v) const;
    int ambient_;
    std::vector<Vec> rows_;      // RREF rows
    std::vector<int> pivcol_;    // ascending
};

// expresses target as a linear combination of the given spanning rows;
// returns false when target is outside their span
bool solve_in_span(const std::vector<Vec>& rows, const Vec& target, Vec& coords_out);

} // namespace wgeo
