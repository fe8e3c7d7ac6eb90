#include "unicoh/torus.hpp"

#include "unicoh/errors.hpp"

namespace unicoh {

void validate_torus(const TorusModel& t) {
  require(t.n >= 1, Errc::BadComplexStructure, "complex dimension must be >= 1");
  require(t.j.rows() == 2 * t.n && t.j.cols() == 2 * t.n, Errc::BadComplexStructure,
          "J must be 2n x 2n");
  require(t.j.is_real(), Errc::BadComplexStructure, "J must be rational");
  if (t.j * t.j != -Mat::identity(2 * t.n))
    fail(Errc::BadComplexStructure, "J^2 != -I");
}

void validate_automorphism(const TorusModel& t, const TorusAutomorphism& g) {
  const int r = t.lattice_rank();
  require(g.mat.rows() == r && g.mat.cols() == r, Errc::BadParameters,
          "automorphism matrix must be 2n x 2n");
  require(g.mat.is_integer(), Errc::BadParameters, "automorphism matrix must be integral");
  GaussRat d = det(g.mat);
  require(d == GaussRat(1) || d == GaussRat(Rat(-1)), Errc::BadParameters,
          "automorphism matrix must be unimodular");
  if (g.mat * t.j != t.j * g.mat) fail(Errc::BadParameters, "matrix does not commute with J");
  if (g.translation) {
    require(int(g.translation->size()) == r, Errc::BadParameters,
            "translation must have length 2n");
  }
}

Rat rat_mod1(const Rat& r) {
  Int num = r.get_num(), den = r.get_den();
  Int q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Rat out(rem, den);
  out.canonicalize();
  return out;
}

TorusAutomorphism compose(const TorusAutomorphism& a, const TorusAutomorphism& b) {
  TorusAutomorphism r;
  r.mat = a.mat * b.mat;
  if (a.translation || b.translation) {
    const int dim = a.mat.rows();
    std::vector<Rat> t(dim, Rat(0));
    if (b.translation) {
      for (int i = 0; i < dim; ++i) {
        GaussRat acc;
        for (int k = 0; k < dim; ++k) acc += a.mat.at(i, k) * GaussRat((*b.translation)[k]);
        t[i] = acc.re;
      }
    }
    if (a.translation)
      for (int i = 0; i < dim; ++i) t[i] += (*a.translation)[i];
    for (auto& x : t) x = rat_mod1(x);
    r.translation = std::move(t);
  }
  return r;
}

TorusAutomorphism identity_automorphism(const TorusModel& t) {
  return TorusAutomorphism{Mat::identity(t.lattice_rank()), std::nullopt};
}

std::pair<Mat, Mat> hodge_split(const TorusModel& t) {
  validate_torus(t);
  const int r = t.lattice_rank();
  Mat jt = t.j.transpose();
  Mat shifted = jt - Mat::identity(r) * GaussRat::i();
  Mat basis = kernel_basis(shifted);
  if (basis.cols() != t.n)
    fail(Errc::BadComplexStructure, "eigenspace of J^T for +i has wrong dimension");
  // normalize: leading nonzero coordinate of each column is 1
  for (int c = 0; c < basis.cols(); ++c) {
    for (int i = 0; i < r; ++i) {
      if (!basis.at(i, c).is_zero()) {
        GaussRat inv = GaussRat(1) / basis.at(i, c);
        for (int k = 0; k < r; ++k) basis.at(k, c) *= inv;
        break;
      }
    }
  }
  Mat conj_basis = basis.conj();
  Mat check = jt * conj_basis + conj_basis * GaussRat::i();
  if (!check.is_zero()) fail(Errc::BadComplexStructure, "conjugate basis not in -i eigenspace");
  return {basis, conj_basis};
}

TorusModel square_torus(int n) {
  TorusModel t;
  t.n = n;
  t.j = Mat::zero(2 * n, 2 * n);
  for (int b = 0; b < n; ++b) {
    t.j.at(2 * b, 2 * b + 1) = GaussRat(Rat(-1));
    t.j.at(2 * b + 1, 2 * b) = GaussRat(1);
  }
  return t;
}

} // namespace unicoh
