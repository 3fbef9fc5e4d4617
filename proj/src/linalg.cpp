#include "quiverforge/linalg.hpp"

namespace qf {

template class Matrix<Scalar>;
template class Matrix<F2>;
template class Matrix<F3>;

} // namespace qf
