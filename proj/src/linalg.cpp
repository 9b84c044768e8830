#include "shimura/linalg.hpp"

#include <sstream>
#include <stdexcept>

#include "shimura/arith.hpp"

namespace shimura {

ZMat hnf(ZMat a) {
    if (a.empty()) return a;
    size_t n = a[0].size();
    size_t r = 0;
    for (size_t col = 0; col < n && r < a.size(); ++col) {
        // euclid down the column until one nonzero remains at row r
        for (;;) {
            size_t piv = a.size();
            for (size_t i = r; i < a.size(); ++i)
                if (a[i][col] != 0 && (piv == a.size() || abs(a[i][col]) < abs(a[piv][col]))) piv = i;
            if (piv == a.size()) break;
            std::swap(a[r], a[piv]);
            bool done = true;
            for (size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
                for (size_t k = col; k < n; ++k) a[i][k] -= q * a[r][k];
                if (a[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= a.size() || a[r][col] == 0) continue;
        if (a[r][col] < 0)
            for (size_t k = col; k < n; ++k) a[r][k] = -a[r][k];
        for (size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
            if (q != 0)
                for (size_t k = col; k < n; ++k) a[i][k] -= q * a[r][k];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

mpz_class common_denominator(const QMat& a) {
    mpz_class d = 1;
    for (auto& row : a)
        for (auto& x : row) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    return d;
}

QMat hnf(const QMat& rows) {
    mpz_class d = common_denominator(rows);
    ZMat z;
    for (auto& row : rows) {
        ZVec zr;
        for (auto& x : row) zr.push_back(mpz_class(x * d));
        z.push_back(zr);
    }
    QMat out;
    for (auto& row : hnf(z)) {
        QVec q;
        for (auto& x : row) {
            mpq_class v(x, d);
            v.canonicalize();
            q.push_back(v);
        }
        out.push_back(q);
    }
    return out;
}

ZMat integer_kernel(const ZMat& rows) {
    size_t m = rows.size();
    if (m == 0) return {};
    size_t n = rows[0].size();
    ZMat aug(m, ZVec(n + m, 0));
    for (size_t i = 0; i < m; ++i) {
        for (size_t k = 0; k < n; ++k) aug[i][k] = rows[i][k];
        aug[i][n + i] = 1;
    }
    ZMat h = hnf(aug);
    ZMat ker;
    for (auto& row : h) {
        bool zero = true;
        for (size_t k = 0; k < n; ++k)
            if (row[k] != 0) zero = false;
        if (zero) ker.emplace_back(row.begin() + n, row.end());
    }
    return ker;
}

QMat rational_kernel(const QMat& a0) {
    QMat a = a0;
    size_t m = a.size(), n = m ? a[0].size() : 0;
    std::vector<int> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[r]);
        mpq_class inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (size_t k = 0; k < n; ++k) a[i][k] -= f * a[r][k];
        }
        pivcol.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_piv(n, false);
    for (int c : pivcol) is_piv[c] = true;
    QMat ker;
    for (size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        QVec v(n, 0);
        v[f] = 1;
        for (size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -a[i][f];
        ker.push_back(v);
    }
    return ker;
}

std::optional<QVec> solve_left(const QMat& b, const QVec& v) {
    // c B = v  <=>  B^T c^T = v^T
    size_t n = b.size();
    QMat a(n, QVec(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = b[j][i];
        a[i][n] = v[i];
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[c][c];
            for (size_t k = c; k <= n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    QVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

mpq_class det(QMat a) {
    size_t n = a.size();
    mpq_class d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    return d;
}

QMat inverse(const QMat& a) {
    size_t n = a.size();
    QMat inv(n, QVec(n));
    for (size_t i = 0; i < n; ++i) {
        QVec e(n, 0);
        e[i] = 1;
        // row i of inverse: c with c A = e_i
        auto c = solve_left(a, e);
        if (!c) throw DomainError("singular matrix");
        inv[i] = *c;
    }
    return inv;
}

std::string format_matrix(const QMat& a) {
    std::ostringstream os;
    for (auto& row : a) {
        for (size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << to_string(row[k]);
        os << "\n";
    }
    return os.str();
}

QMat parse_matrix(const std::string& text) {
    QMat out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        QVec row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_rational(tok));
        if (row.empty()) continue;
        if (!out.empty() && row.size() != out[0].size()) throw DomainError("ragged matrix block");
        out.push_back(row);
    }
    return out;
}

}  // namespace shimura
