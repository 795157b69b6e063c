// ctest fixture: synthesize (or load) the standard table kernels so every
// dependent test binary starts from a warm on-disk cache.

#include <cstdio>

#include "colombeau/kernels.hpp"

int main() {
  colombeau::warm_kernel_cache();
  const auto flat = colombeau::vanishing_moment_kernel();
  const auto tilted = colombeau::tilted_vanishing_moment_kernel();
  std::printf("kernel cache ready: %s (R=%g), %s (R=%g) in %s\n",
              flat->name().c_str(), flat->radius(), tilted->name().c_str(),
              tilted->radius(), colombeau::kernel_cache_dir().c_str());
  return 0;
}
