#include "anosov/smith.hpp"

#include <algorithm>
#include <stdexcept>

namespace anosov {

namespace {

struct Pivot {
  std::size_t row;
  std::size_t col;
  bool found;
};

// Smallest nonzero |entry| in the trailing block, first hit in row-major order.
Pivot find_pivot(const IntMat& d, std::size_t t) {
  Pivot best{0, 0, false};
  BigInt best_abs;
  for (std::size_t r = t; r < d.rows(); ++r) {
    for (std::size_t c = t; c < d.cols(); ++c) {
      if (d(r, c) == 0) continue;
      BigInt a = abs(d(r, c));
      if (!best.found || a < best_abs) {
        best = {r, c, true};
        best_abs = a;
      }
    }
  }
  return best;
}

}  // namespace

std::vector<BigInt> SNFResult::diagonal() const {
  const std::size_t n = std::min(D.rows(), D.cols());
  std::vector<BigInt> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(D(i, i));
  return out;
}

std::size_t SNFResult::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

SNFResult snf(const IntMat& m) {
  IntMat d = m;
  IntMat u = IntMat::identity(m.rows());
  IntMat v = IntMat::identity(m.cols());
  const std::size_t steps = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      const Pivot p = find_pivot(d, t);
      if (!p.found) {
        return {std::move(u), std::move(d), std::move(v)};
      }
      d.swap_rows(t, p.row);
      u.swap_rows(t, p.row);
      d.swap_cols(t, p.col);
      v.swap_cols(t, p.col);

      bool clean = true;
      for (std::size_t r = t + 1; r < d.rows(); ++r) {
        if (d(r, t) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), d(r, t).get_mpz_t(), d(t, t).get_mpz_t());
        BigInt neg = -q;
        d.add_row_multiple(r, t, neg);
        u.add_row_multiple(r, t, neg);
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < d.cols(); ++c) {
        if (d(t, c) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, c).get_mpz_t(), d(t, t).get_mpz_t());
        BigInt neg = -q;
        d.add_col_multiple(c, t, neg);
        v.add_col_multiple(c, t, neg);
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the whole trailing block for the divisibility chain.
      bool divides_all = true;
      for (std::size_t r = t + 1; r < d.rows() && divides_all; ++r) {
        for (std::size_t c = t + 1; c < d.cols(); ++c) {
          if (!mpz_divisible_p(d(r, c).get_mpz_t(), d(t, t).get_mpz_t())) {
            d.add_row_multiple(t, r, BigInt(1));
            u.add_row_multiple(t, r, BigInt(1));
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

BigInt AbelianGroup::torsion_order() const {
  BigInt order = 1;
  for (const auto& f : invariant_factors) order *= f;
  return order;
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank == 1) {
    out = "Z";
  } else if (free_rank > 1) {
    out = "Z^" + std::to_string(free_rank);
  }
  for (const auto& f : invariant_factors) {
    if (!out.empty()) out += " + ";
    out += "Z/" + f.get_str();
  }
  return out;
}

AbelianGroup cokernel(const IntMat& m) {
  const SNFResult s = snf(m);
  AbelianGroup g;
  std::size_t nonzero = 0;
  for (const auto& d : s.diagonal()) {
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) g.invariant_factors.push_back(d);
  }
  g.free_rank = m.rows() - nonzero;
  return g;
}

AbelianGroup direct_sum(const AbelianGroup& lhs, const AbelianGroup& rhs) {
  std::vector<BigInt> diag;
  for (const auto* g : {&lhs, &rhs}) {
    for (const auto& f : g->invariant_factors) diag.push_back(f);
  }
  const std::size_t free = lhs.free_rank + rhs.free_rank;
  const std::size_t n = diag.size() + free;
  IntMat m(n, diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return cokernel(m);
}

CokernelMap::CokernelMap(const IntMat& relations) {
  SNFResult s = snf(relations);
  U_ = std::move(s.U);
  diag_.assign(U_.rows(), BigInt(0));
  const auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) diag_[i] = d[i];
  for (const auto& f : diag_) {
    if (f == 0) {
      ++group_.free_rank;
    } else if (f != 1) {
      group_.invariant_factors.push_back(f);
    }
  }
}

std::vector<BigInt> CokernelMap::reduce(std::span<const BigInt> v) const {
  const std::vector<BigInt> w = U_.apply(v);
  std::vector<BigInt> torsion;
  std::vector<BigInt> free;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (diag_[i] == 0) {
      free.push_back(w[i]);
    } else if (diag_[i] != 1) {
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), w[i].get_mpz_t(), diag_[i].get_mpz_t());
      torsion.push_back(r);
    }
  }
  torsion.insert(torsion.end(), free.begin(), free.end());
  return torsion;
}

bool CokernelMap::is_zero(std::span<const BigInt> v) const {
  const auto coords = reduce(v);
  return std::all_of(coords.begin(), coords.end(), [](const BigInt& c) { return c == 0; });
}

}  // namespace anosov
