#include "solve_impl.hpp"

namespace infoflow::kernels::detail {

std::size_t solve_scalar(const SolveBatch& s) { return solve_lanes_scalar(s, 0, s.lanes); }

}  // namespace infoflow::kernels::detail
