#include "shimura/embeddings.hpp"

#include <algorithm>
#include <cmath>

#include "shimura/enumerate.hpp"

namespace shimura {

namespace {

i64 height(const IVec& v) {
    i64 h = 0;
    for (auto x : v) h = std::max<i64>(h, x < 0 ? -x : x);
    return h;
}

bool height_less(const IVec& a, const IVec& b) {
    i64 ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
}

template <class Visit>
void box(size_t dim, i64 r, Visit visit) {
    IVec x(dim, -r);
    for (;;) {
        visit(x);
        size_t i = dim;
        for (;;) {
            if (i == 0) return;
            --i;
            if (x[i] < r) {
                ++x[i];
                for (size_t k = i + 1; k < dim; ++k) x[k] = -r;
                break;
            }
        }
    }
}

Quat combine(const OrderLattice& L, const IVec& c) { return L.from_coords(c); }

}  // namespace

std::vector<Quat> trace_zero_search(const QuatAlgebra& A, const OrderLattice& O, const mpq_class& n, i64 radius) {
    OrderLattice T = trace_zero_sublattice(O);
    QMat g = nrd_gram(A, T);
    Eigen::MatrixXd gd = to_eigen(g);
    double nd = n.get_d();
    std::vector<IVec> hits;
    box(3, radius, [&](const IVec& x) {
        Eigen::Vector3d v(static_cast<double>(x[0]), static_cast<double>(x[1]), static_cast<double>(x[2]));
        if (std::abs(v.dot(gd * v) - nd) > 1e-6 * (1 + std::abs(nd))) return;
        if (quad_form(g, x) == n) hits.push_back(x);
    });
    std::sort(hits.begin(), hits.end(), height_less);
    std::vector<Quat> out;
    for (auto& h : hits) out.push_back(combine(T, h));
    return out;
}

std::vector<Embedding> find_embeddings(const QuatAlgebra& A, const OrderLattice& O, i64 delta, i64 radius) {
    std::vector<Embedding> out;
    for (auto& g : trace_zero_search(A, O, mpq_class(-delta), radius)) out.push_back(Embedding{g});
    if (out.empty()) throw NoneFound("no embedding within radius; increase the radius");
    return out;
}

bool is_optimal(const QuatAlgebra&, const OrderLattice& O, const Embedding& phi) {
    for (int m = 0; m <= 1; ++m)
        if (membership((phi.g + Quat::scalar(m)) * mpq_class(1, 2), O)) return false;
    return true;
}

Quat find_theta(const QuatAlgebra& A, const OrderLattice& O, const Embedding& phi, i64 radius) {
    for (auto& th : trace_zero_search(A, O, mpq_class(A.d_b), radius)) {
        mpq_class tr = A.trd(A.mul(th, phi.g));
        if (tr > 0) return th;
        if (tr < 0) return -th;
    }
    throw NoneFound("no element with square -D_B within radius");
}

namespace {

std::vector<IVec> norm_hits(const QuatAlgebra& A, const OrderLattice& O, const mpq_class& n, i64 radius) {
    QMat g = nrd_gram(A, O);
    Eigen::MatrixXd gd = to_eigen(g);
    double nd = n.get_d();
    std::vector<IVec> hits;
    box(4, radius, [&](const IVec& x) {
        const Eigen::Vector4d v{double(x[0]), double(x[1]), double(x[2]), double(x[3])};
        if (std::abs(v.dot(gd * v) - nd) > 1e-6 * (1 + std::abs(nd))) return;
        if (quad_form(g, x) == n) hits.push_back(x);
    });
    std::sort(hits.begin(), hits.end(), height_less);
    return hits;
}

}  // namespace

std::optional<Quat> find_norm_element(const QuatAlgebra& A, const OrderLattice& O, const mpq_class& n, i64 radius) {
    for (i64 r = std::min<i64>(2, radius);; r = std::min(2 * r, radius)) {
        auto hits = norm_hits(A, O, n, r);
        if (!hits.empty()) return combine(O, hits.front());
        if (r == radius) return std::nullopt;
    }
}

std::vector<Quat> norm_one_units(const QuatAlgebra& A, const OrderLattice& O, i64 radius) {
    std::vector<Quat> out;
    for (auto& h : norm_hits(A, O, mpq_class(1), radius)) out.push_back(combine(O, h));
    return out;
}

i64 conductor(const QuatAlgebra&, const OrderLattice& O, const Quat& xi, i64 t) {
    for (i64 c : divisors(t))
        if (membership(xi * mpq_class(mpq_class(c) / t), O)) return c;
    throw DomainError("element is not in the order");
}

i64 frobenius_type(const QuatAlgebra& A, const OrderLattice& O, const Quat& xi, i64 t, const Embedding& phi,
                   const Quat& theta) {
    Quat x = xi * mpq_class(1, t);
    Quat tinv = A.inv(theta);
    i64 nu = 1;
    for (i64 p : A.ramified_primes) {
        if (!p_adic_membership(x, O, p)) throw InconsistentLocalData("xi/t is not p-integral");
        if (p_adic_membership(A.mul(x - phi.g, tinv), O, p)) continue;
        if (p_adic_membership(A.mul(x + phi.g, tinv), O, p)) {
            nu *= p;
            continue;
        }
        throw InconsistentLocalData("reductions neither agree nor differ by Frobenius");
    }
    return nu;
}

Quat orbit_map(const QuatAlgebra& A, const Quat& y, const mpq_class& m, const Embedding& phi) {
    return A.mul(A.mul(A.inv(y), phi.g), y) * m;
}

Embedding adjoint(const QuatAlgebra& A, const Quat& u, const Embedding& phi) {
    return Embedding{A.mul(A.mul(u, phi.g), A.inv(u))};
}

static IVec primitive(const QVec& v) {
    mpz_class den = 1, g = 0;
    for (auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> z;
    for (auto& x : v) {
        z.push_back(mpz_class(x * den));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
    }
    IVec out;
    for (auto& x : z) out.push_back(g == 0 ? 0 : mpz_class(x / g).get_si());
    return out;
}

SignResult phi_sign(const QuatAlgebra& A, const Quat& xi, const mpq_class& m, const Embedding& phi, i64 delta) {
    QMat mat(4, QVec(4));
    for (size_t k = 0; k < 4; ++k) {
        Quat e;
        e.c[k] = 1;
        Quat col = A.mul(e, xi) - A.mul(phi.g, e) * m;
        for (size_t r = 0; r < 4; ++r) mat[r][k] = col.c[r];
    }
    QMat ker = rational_kernel(mat);
    SignResult res;
    if (ker.empty()) return res;
    std::vector<IVec> cands;
    for (i64 s = -2; s <= 2; ++s)
        for (i64 t = -2; t <= 2; ++t) {
            if (ker.size() == 1 && t != 0) continue;
            QVec v(4, 0);
            for (size_t k = 0; k < 4; ++k) {
                v[k] = ker[0][k] * s;
                if (ker.size() > 1) v[k] += ker[1][k] * t;
            }
            IVec p = primitive(v);
            if (height(p) > 0) cands.push_back(p);
        }
    std::sort(cands.begin(), cands.end(), height_less);
    const IVec& b = cands.front();
    res.b0 = Quat(b[0], b[1], b[2], b[3]);
    mpq_class q = A.nrd(res.b0) * delta;
    res.sign = q > 0 ? PhiSign::pos : (q < 0 ? PhiSign::neg : PhiSign::none);
    return res;
}

OrderLattice scaled_lattice(const QuatAlgebra& A, const QuadField& K, const Embedding& phi, const IdealRep& I,
                            const OrderLattice& O) {
    (void)K;
    mpq_class sa = I.scale * I.a;
    std::vector<Quat> inv_gens{Quat::scalar(1 / I.scale), Quat::scalar(mpq_class(I.b) / sa) - phi.g * (1 / sa)};
    std::vector<Quat> gens;
    for (auto& gm : inv_gens)
        for (size_t k = 0; k < 4; ++k) gens.push_back(A.mul(gm, O.elem(k)));
    return lattice_from_generators(gens);
}

i64 fiber_enumerate(const QuatAlgebra& A, const QuadField& K, const Quat& xi, i64 m, const Embedding& phi,
                    const std::vector<IdealRep>& reps, const OrderLattice& O) {
    SignResult s = phi_sign(A, xi, mpq_class(m), phi, K.delta);
    if (s.sign == PhiSign::none) throw EmptySolutionSpace("xi is not conjugate to a multiple of phi(sqrt(delta))");
    const Quat& b0 = s.b0;
    Quat gb0 = A.mul(phi.g, b0);
    Quat b0inv = A.inv(b0);
    int sgn = s.sign == PhiSign::pos ? 1 : -1;
    size_t gk = 1;
    while (phi.g.c[gk] == 0) ++gk;
    i64 total = 0;
    for (auto& I : reps) {
        OrderLattice L = scaled_lattice(A, K, phi, I, O);
        QVec u = *L.coords(b0), w = *L.coords(gb0);
        QMat comp = rational_kernel({u, w});
        mpz_class den = common_denominator(comp);
        ZMat rows(4, ZVec(comp.size()));
        for (size_t i = 0; i < 4; ++i)
            for (size_t c = 0; c < comp.size(); ++c) rows[i][c] = mpz_class(comp[c][i] * den);
        ZMat sat = integer_kernel(rows);
        if (sat.size() != 2) throw DomainError("unexpected rank of the solution lattice");
        std::array<mpq_class, 2> xs, ys;
        for (size_t i = 0; i < 2; ++i) {
            Quat q;
            for (size_t k = 0; k < 4; ++k) q = q + L.elem(k) * mpq_class(sat[i][k]);
            Quat alpha = A.mul(q, b0inv);
            xs[i] = alpha.c[0];
            ys[i] = alpha.c[gk] / phi.g.c[gk];
        }
        QMat gram(2, QVec(2));
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) gram[i][j] = xs[i] * xs[j] - mpq_class(K.delta) * ys[i] * ys[j];
        mpq_class target = mpq_class(sgn * m) / (mpq_class(K.delta) * I.norm() * A.nrd(b0));
        if (target <= 0) continue;
        for (auto& x : fincke_pohst_exact(gram, target))
            if (quad_form(gram, x) == target) ++total;
    }
    return total;
}

}  // namespace shimura
