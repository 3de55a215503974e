// Stand-in for targets where the AVX2 translation unit is not built;
// the dispatcher treats a null fn as "not available".

#include "casimir/kernels.hpp"
#include "kernel_impl.hpp"

namespace casimir::detail {

KernelInfo avx2_kernel_impl() { return {nullptr, "avx2"}; }

}  // namespace casimir::detail
