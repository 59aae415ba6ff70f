#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "common.hpp"

namespace kf {

// A partition is a weakly decreasing vector of positive int64 parts. The
// empty partition is {}. Helpers below keep every construction normalized;
// anything that would produce a non-partition throws domain_error.
using Partition = std::vector<int64_t>;

int64_t part_size(const Partition& lam);           // |lambda|
int64_t part_length(const Partition& lam);         // number of parts
bool is_partition(const Partition& lam);
void require_partition(const Partition& lam, const char* who);

// Accepts "3,2,1", "[3,2,1]", "(3,2,1)", "" / "0" / "[]" for the empty
// partition, and the rectangle shorthand "AxB" = A rows of width B.
Partition parse_partition(const std::string& text);
std::string partition_to_string(const Partition& lam);

// A rows of width B, i.e. (B,B,...,B) with A parts. rect(0, w) = {}.
Partition rect(int64_t rows, int64_t width);

Partition transpose(const Partition& lam);

// Componentwise (row-wise) sum; the semigroup operation on partitions.
Partition add(const Partition& lam, const Partition& mu);

// Every part multiplied by a >= 0. scale(0, lam) = {}.
Partition scale(int64_t a, const Partition& lam);

// Prepend a new first row of size N - |rho|; requires that row to be at
// least rho_1 so the result is a partition. pad(rho, |rho|) is allowed only
// for rho = {} or when a zero first row is droppable, i.e. it returns rho
// itself when N == |rho| and rho is nonempty only if rho_1 cannot exceed 0;
// in practice callers always pad strictly.
Partition pad(const Partition& rho, int64_t N);

// Inverse of pad: drop the first row. strip_first_row({}) = {}.
Partition strip_first_row(const Partition& lam);

// Map column length -> number of columns of exactly that length.
std::map<int64_t, int64_t> column_multiplicities(const Partition& lam);

// The partition (i, 1^j + rho): top row i, then the componentwise sum of
// a j-box column and rho. Any j >= 0 works; i must dominate the second row.
Partition near_hook(int64_t i, int64_t j, const Partition& rho);

bool is_self_conjugate(const Partition& lam);

// True iff lam_i >= mu_i for all i (containment of Young diagrams).
bool contains(const Partition& lam, const Partition& mu);

}  // namespace kf
