#include "tubal/tensor.hpp"

#include <cmath>

namespace tubal {

CTensor3 to_complex(const Tensor3& a) {
  CTensor3 out(a.dims());
  auto src = a.data();
  auto dst = out.data();
  for (std::size_t t = 0; t < src.size(); ++t) dst[t] = cplx(src[t], 0.0);
  return out;
}

Tensor3 real_part(const CTensor3& a, double rel_tol) {
  Tensor3 out(a.dims());
  auto src = a.data();
  auto dst = out.data();
  double im2 = 0.0;
  double all2 = 0.0;
  for (std::size_t t = 0; t < src.size(); ++t) {
    dst[t] = src[t].real();
    im2 += src[t].imag() * src[t].imag();
    all2 += std::norm(src[t]);
  }
  const double limit = rel_tol * (std::sqrt(all2) + rel_tol);
  if (!(std::sqrt(im2) <= limit)) {
    throw NumericalError("imaginary residue " + std::to_string(std::sqrt(im2)) +
                         " exceeds tolerance when dropping to real");
  }
  return out;
}

}  // namespace tubal
