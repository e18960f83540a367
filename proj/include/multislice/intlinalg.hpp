#pragma once

#include <optional>
#include <vector>

#include "multislice/common.hpp"

namespace multislice {

using IntMatrix = std::vector<std::vector<BigInt>>;

// U·A·V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
    std::vector<BigInt> invariants;  // nonzero diagonal entries
    int rank = 0;
    IntMatrix U, V, D;
};

SmithForm smith_normal_form(const IntMatrix& A);

// Integer solution of A·x = b, if one exists.
std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& A,
                                                 const std::vector<BigInt>& b);

// Full column rank and every invariant factor equal to 1.
bool is_unimodular_embedding(const IntMatrix& A);

IntMatrix transpose(const IntMatrix& A);
std::vector<BigInt> multiply(const IntMatrix& A, const std::vector<BigInt>& x);

}  // namespace multislice
