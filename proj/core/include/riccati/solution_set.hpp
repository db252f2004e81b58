#pragma once

#include <vector>

#include "riccati/linalg.hpp"

namespace riccati {

/// Affine family of symmetric solutions { base + sum_i xi_i basis[i] }.
/// An empty basis is an isolated solution.
struct SolutionFamily {
    Matrix base;
    std::vector<Matrix> basis;

    Index dim() const { return static_cast<Index>(basis.size()); }

    Matrix at(const Eigen::VectorXd& xi) const {
        Matrix x = base;
        for (Index i = 0; i < dim(); ++i) x += xi(i) * basis[i];
        return x;
    }
};

struct SolutionSet {
    std::vector<SolutionFamily> families;

    bool empty() const { return families.empty(); }
};

/// Flips basis matrices so the first entry of nontrivial magnitude
/// (row-major order) is positive. Output is deterministic across
/// sign-ambiguous SVD/eigen decompositions.
void canonicalize_signs(SolutionSet& set);

}  // namespace riccati
