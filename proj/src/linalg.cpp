#include "unicoh/linalg.hpp"

#include <numeric>

#include "unicoh/errors.hpp"

namespace unicoh {

bool is_unipotent(const Mat& m) {
  if (!m.is_square()) return false;
  Mat n = m - Mat::identity(m.rows());
  Mat p = n;
  for (int k = 1; k <= m.rows(); ++k) {
    if (p.is_zero()) return true;
    if (k < m.rows()) p = p * n;
  }
  return false;
}

Mat unipotent_log(const Mat& m) {
  require(is_unipotent(m), Errc::NotUnipotent, "unipotent_log");
  const int dim = m.rows();
  Mat n = m - Mat::identity(dim);
  Mat x = Mat::zero(dim, dim);
  Mat p = n;
  for (int k = 1; k <= dim && !p.is_zero(); ++k) {
    GaussRat coeff(Rat((k % 2 == 1) ? 1 : -1, k));
    x = x + p * coeff;
    p = p * n;
  }
  return x;
}

Mat nilpotent_exp(const Mat& x) {
  const int dim = x.rows();
  Mat acc = Mat::identity(dim);
  Mat p = x;
  Rat fact(1);
  for (int k = 1; k <= dim && !p.is_zero(); ++k) {
    fact *= k;
    acc = acc + p * GaussRat(Rat(1) / fact);
    p = p * x;
  }
  return acc;
}

std::map<int, int, std::greater<int>> jordan_profile_unipotent(const Mat& m) {
  require(is_unipotent(m), Errc::NotUnipotent, "jordan_profile_unipotent");
  const int dim = m.rows();
  Mat n = m - Mat::identity(dim);
  // ranks[k] = rank((M-I)^k)
  std::vector<int> ranks{dim};
  Mat p = n;
  while (ranks.back() > 0) {
    ranks.push_back(rank(p));
    p = p * n;
  }
  std::map<int, int, std::greater<int>> profile;
  // blocks of size >= k: ranks[k-1] - ranks[k]
  for (size_t k = 1; k < ranks.size(); ++k) {
    int at_least_k = ranks[k - 1] - ranks[k];
    int at_least_k1 = (k + 1 < ranks.size()) ? ranks[k] - ranks[k + 1] : 0;
    int exactly_k = at_least_k - at_least_k1;
    if (exactly_k > 0) profile[int(k)] = exactly_k;
  }
  return profile;
}

int max_jordan_block(const Mat& m) {
  auto prof = jordan_profile_unipotent(m);
  return prof.empty() ? 0 : prof.begin()->first;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial and cyclotomic detection
// ---------------------------------------------------------------------------

std::vector<Rat> charpoly(const Mat& m) {
  require(m.is_square() && m.is_real(), Errc::Internal, "charpoly wants a real square matrix");
  const int n = m.rows();
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr M_1, M_{k+1} = A(M_k + c_{n-k} I)
  std::vector<Rat> c(size_t(n) + 1);
  c[n] = 1;
  Mat mk = m;
  for (int k = 1; k <= n; ++k) {
    Rat tr(0);
    for (int i = 0; i < n; ++i) tr += mk.at(i, i).re;
    c[n - k] = -tr / k;
    if (k < n) {
      Mat shift = mk;
      for (int i = 0; i < n; ++i) shift.at(i, i) += GaussRat(c[n - k]);
      mk = m * shift;
    }
  }
  return c;
}

unsigned long euler_phi(unsigned long d) {
  unsigned long result = d;
  for (unsigned long p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      while (d % p == 0) d /= p;
      result -= result / p;
    }
  }
  if (d > 1) result -= result / d;
  return result;
}

namespace {

// quotient of exact division by a monic divisor; nullopt if not divisible
std::optional<IntPoly> divide_exact(const IntPoly& num, const IntPoly& den) {
  if (num.size() < den.size()) return std::nullopt;
  IntPoly rem = num;
  IntPoly quot(num.size() - den.size() + 1, Int(0));
  for (int k = int(quot.size()) - 1; k >= 0; --k) {
    Int q = rem[k + den.size() - 1]; // den monic
    quot[k] = q;
    if (q == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) rem[k + j] -= q * den[j];
  }
  for (const Int& r : rem)
    if (r != 0) return std::nullopt;
  return quot;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

IntPoly x_pow_minus_one(unsigned long d) {
  IntPoly p(d + 1, Int(0));
  p[0] = -1;
  p[d] = 1;
  return p;
}

} // namespace

IntPoly cyclotomic(unsigned long d) {
  // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e
  IntPoly num = x_pow_minus_one(d);
  for (unsigned long e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto q = divide_exact(num, cyclotomic(e));
    require(q.has_value(), Errc::Internal, "cyclotomic recursion");
    num = *q;
  }
  return num;
}

std::optional<std::map<unsigned long, int>> cyclotomic_profile(const IntPoly& p) {
  require(!p.empty() && p.back() == 1, Errc::Internal, "cyclotomic_profile wants monic input");
  IntPoly rest = p;
  std::map<unsigned long, int> mult;
  const unsigned long deg = p.size() - 1;
  // phi(d) >= sqrt(d/2), so phi(d) <= deg forces d <= 2 deg^2 + 1
  for (unsigned long d = 1; d <= 2 * deg * deg + 1 && rest.size() > 1; ++d) {
    if (euler_phi(d) > rest.size() - 1) continue;
    IntPoly phi = cyclotomic(d);
    while (true) {
      auto q = divide_exact(rest, phi);
      if (!q) break;
      rest = *q;
      mult[d] += 1;
    }
  }
  if (rest.size() != 1 || rest[0] != 1) return std::nullopt;
  return mult;
}

unsigned long quasi_unipotent_order(const Mat& m) {
  require(m.is_square() && m.is_integer(), Errc::BadParameters,
          "quasi_unipotent_order wants an integer matrix");
  GaussRat d = det(m);
  require(d == GaussRat(1) || d == GaussRat(Rat(-1)), Errc::BadParameters,
          "matrix not invertible over the integers");
  std::vector<Rat> cp = charpoly(m);
  IntPoly p(cp.size());
  for (size_t i = 0; i < cp.size(); ++i) {
    require(cp[i].get_den() == 1, Errc::Internal, "integer charpoly expected");
    p[i] = cp[i].get_num();
  }
  auto profile = cyclotomic_profile(p);
  if (!profile)
    fail(Errc::NotQuasiUnipotent, "characteristic polynomial has a non-cyclotomic factor");
  unsigned long n = 1;
  for (const auto& [d_ord, mult] : *profile) n = std::lcm(n, d_ord);
  return n;
}

// ---------------------------------------------------------------------------
// Inertia by congruence reduction
// ---------------------------------------------------------------------------

namespace {

void swap_sym(Mat& h, int a, int b) {
  if (a == b) return;
  const int n = h.rows();
  for (int j = 0; j < n; ++j) std::swap(h.at(a, j), h.at(b, j));
  for (int i = 0; i < n; ++i) std::swap(h.at(i, a), h.at(i, b));
}

} // namespace

Inertia inertia(const Mat& h_in) {
  require(h_in.is_hermitian(), Errc::NotSymmetric, "inertia wants a Hermitian/symmetric matrix");
  Mat h = h_in;
  const int n = h.rows();
  Inertia res;
  int k = 0;
  while (k < n) {
    int diag = -1;
    for (int i = k; i < n; ++i)
      if (!h.at(i, i).is_zero()) {
        diag = i;
        break;
      }
    if (diag >= 0) {
      swap_sym(h, k, diag);
      Rat d = h.at(k, k).re;
      if (d > 0)
        ++res.n_plus;
      else
        ++res.n_minus;
      GaussRat dinv = GaussRat(Rat(1) / d);
      for (int i = k + 1; i < n; ++i) {
        if (h.at(i, k).is_zero()) continue;
        GaussRat f = h.at(i, k) * dinv;
        for (int j = k + 1; j < n; ++j) h.at(i, j) -= f * h.at(k, j);
        h.at(i, k) = GaussRat();
      }
      for (int j = k + 1; j < n; ++j) h.at(k, j) = GaussRat();
      ++k;
      continue;
    }
    // active diagonal all zero: look for an off-diagonal pivot
    int pi = -1, pj = -1;
    for (int i = k; i < n && pi < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!h.at(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) {
      res.n_zero += n - k;
      break;
    }
    swap_sym(h, k, pi);
    swap_sym(h, k + 1, (pj == k) ? pi : pj);
    // pivot block [[0, a],[conj a, 0]] contributes one +1 and one -1
    GaussRat a = h.at(k, k + 1);
    ++res.n_plus;
    ++res.n_minus;
    GaussRat ainv = GaussRat(1) / a;
    GaussRat acinv = GaussRat(1) / a.conj();
    for (int i = k + 2; i < n; ++i) {
      GaussRat v = h.at(i, k);
      GaussRat w = h.at(i, k + 1);
      if (v.is_zero() && w.is_zero()) continue;
      for (int j = k + 2; j < n; ++j)
        h.at(i, j) -= w * ainv * h.at(k, j) + v * acinv * h.at(k + 1, j);
      h.at(i, k) = GaussRat();
      h.at(i, k + 1) = GaussRat();
    }
    for (int j = k + 2; j < n; ++j) {
      h.at(k, j) = GaussRat();
      h.at(k + 1, j) = GaussRat();
    }
    k += 2;
  }
  return res;
}

bool is_positive_semidefinite(const Mat& h) { return inertia(h).n_minus == 0; }

bool is_positive_definite(const Mat& h) {
  Inertia in = inertia(h);
  return in.n_minus == 0 && in.n_zero == 0;
}

} // namespace unicoh
