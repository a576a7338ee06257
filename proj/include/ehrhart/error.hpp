#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ehrhart {

// Invalid input or violated precondition. Callers may recover.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Points whose affine hull is lower-dimensional than the ambient lattice.
class NotFullDimensional : public Error {
 public:
  NotFullDimensional(std::size_t affine_rank, std::size_t ambient_rank)
      : Error("points span an affine subspace of dimension " + std::to_string(affine_rank) +
              " in a rank-" + std::to_string(ambient_rank) + " lattice; normalize first"),
        affine_rank_(affine_rank) {}

  std::size_t affine_rank() const noexcept { return affine_rank_; }

 private:
  std::size_t affine_rank_;
};

// A formula disagreed with the counting oracle, or a computed polynomial
// violated a structural guarantee. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ehrhart
