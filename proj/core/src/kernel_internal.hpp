#pragma once

#include <cstdint>
#include <vector>

#include "colombeau/kernels.hpp"

namespace colombeau {

// Storage behind TableKernel: uniform-step derivative tables in blocks.
// An even kernel stores x >= 0 only and mirrors with (-1)^k.
struct TableKernel::Data {
  std::string name;
  SpectralProfile profile;
  double radius = 0.0;
  int max_k = 8;
  bool even = true;

  struct Block {
    double x0 = 0.0;
    double x1 = 0.0;
    double h = 0.0;
    int n = 0;                                // node count, (x1-x0)/h + 1
    std::vector<std::vector<double>> values;  // [k][node]
  };
  std::vector<Block> blocks;

  Kernel::Envelope env;   // all tabulated orders
  Kernel::Envelope env0;  // kernel magnitude only (tail mass/moment bounds)

  std::uint64_t checksum() const;
};

namespace detail {

// Extended-precision synthesis of the inverse transform and its
// derivatives on the block grid, plus far-field envelope measurement.
std::shared_ptr<const TableKernel::Data> synthesize_kernel_data(
    const std::string& name, const SpectralProfile& profile, double radius);

}  // namespace detail

}  // namespace colombeau
