#include "anosov/suspension.hpp"

#include "anosov/errors.hpp"

namespace anosov {

SuspensionFlow::SuspensionFlow(Hyperbolic2 a, CokernelMap horizontal, AbelianGroup h1)
    : a_(std::move(a)), horizontal_(std::move(horizontal)), h1_(std::move(h1)) {}

SuspensionFlow build_suspension(const Hyperbolic2& a) {
  a.require_positive("build_suspension");
  const IntMat shifted = a.matrix() - IntMat::identity(2);
  CokernelMap horizontal(shifted);
  AbelianGroup h1 = direct_sum(AbelianGroup{1, {}}, horizontal.group());
  return SuspensionFlow(a, std::move(horizontal), std::move(h1));
}

std::size_t per_z(const PeriodicOrbit& orbit) { return orbit.period(); }

bool OrbitClass::is_zero() const {
  if (fiber_degree != 0) return false;
  for (const auto& h : horizontal)
    if (h != 0) return false;
  return true;
}

std::string OrbitClass::to_string() const {
  std::string out = "(" + std::to_string(fiber_degree) + ";";
  if (horizontal.empty()) return out + " 0)";
  for (const auto& h : horizontal) out += " " + h.get_str();
  return out + ")";
}

std::vector<BigInt> horizontal_vector(const IntMat& a, const PeriodicOrbit& orbit) {
  const TorusPoint& x = orbit.representative();
  const IntMat an = mat_pow(a, orbit.period());
  // (A^n - I)(p/q) must be integral for a point of period n.
  std::vector<BigInt> out(2);
  const BigInt p[2] = {x.p1(), x.p2()};
  for (std::size_t i = 0; i < 2; ++i) {
    BigInt num = an(i, 0) * p[0] + an(i, 1) * p[1] - p[i];
    if (!mpz_divisible_p(num.get_mpz_t(), x.q().get_mpz_t())) {
      throw InputError("horizontal_vector: point does not have the stated period");
    }
    out[i] = num / x.q();
  }
  return out;
}

OrbitClass orbit_class(const SuspensionFlow& flow, const PeriodicOrbit& orbit) {
  if (!is_orbit_of(flow.matrix().matrix(), orbit)) throw InputError("orbit_class: not an orbit of the flow's matrix");
  OrbitClass c;
  c.fiber_degree = per_z(orbit);
  c.horizontal = flow.horizontal().reduce(horizontal_vector(flow.matrix().matrix(), orbit));
  return c;
}

std::vector<BigInt> horizontal_difference(const SuspensionFlow& flow, const PeriodicOrbit& x,
                                          const PeriodicOrbit& y) {
  if (x.period() != y.period()) throw InputError("horizontal_difference: periods differ");
  const IntMat& a = flow.matrix().matrix();
  if (!is_orbit_of(a, x) || !is_orbit_of(a, y)) throw InputError("horizontal_difference: not an orbit of the flow's matrix");
  const IntMat an = mat_pow(a, x.period()) - IntMat::identity(2);
  const BigRational dx = x.representative().x() - y.representative().x();
  const BigRational dy = x.representative().y() - y.representative().y();
  std::vector<BigInt> out(2);
  for (std::size_t i = 0; i < 2; ++i) {
    BigRational v = an(i, 0) * dx + an(i, 1) * dy;
    v.canonicalize();
    if (v.get_den() != 1) throw std::logic_error("horizontal_difference: non-integral lifted difference");
    out[i] = v.get_num();
  }
  return flow.horizontal().reduce(out);
}

ReversedFlow reverse(const SuspensionFlow& flow) {
  const Hyperbolic2 inv = flow.matrix().inverse();
  RLDecomposition d = rl_decompose_with_conjugator(inv);
  return ReversedFlow{build_suspension(inv), Hyperbolic2::from_matrix(d.word.product()), std::move(d.conjugator)};
}

PeriodicOrbit reverse_orbit(const SuspensionFlow& flow, const PeriodicOrbit& orbit) {
  if (!is_orbit_of(flow.matrix().matrix(), orbit)) throw InputError("reverse_orbit: not an orbit of the flow's matrix");
  return orbit_of(flow.matrix().inverse().matrix(), orbit.representative());
}

}  // namespace anosov
