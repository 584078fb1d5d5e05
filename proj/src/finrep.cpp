#include "lewisper/finrep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "lewisper/errors.hpp"

namespace lewisper {
namespace finrep {

// ---------------------------------------------------------------------------
// GroupWord
// ---------------------------------------------------------------------------

namespace {

using IMat = std::array<long long, 4>;

IMat imul(const IMat& a, const IMat& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

IMat token_matrix(Tok t) {
    switch (t) {
        case Tok::S: return {0, -1, 1, 0};
        case Tok::T: return {1, 1, 0, 1};
        case Tok::Tinv: return {1, -1, 0, 1};
        case Tok::Tp: return {1, 0, 1, 1};
        case Tok::Tpinv: return {1, 0, -1, 1};
    }
    throw InputError("token_matrix: unknown token");
}

}  // namespace

IMat GroupWord::int_matrix() const {
    IMat m = {1, 0, 0, 1};
    for (Tok t : tokens) m = imul(m, token_matrix(t));
    return m;
}

GroupWord GroupWord::concat(const GroupWord& other) const {
    GroupWord w = *this;
    w.tokens.insert(w.tokens.end(), other.tokens.begin(), other.tokens.end());
    return w;
}

GroupWord GroupWord::parse(const std::string& text) {
    GroupWord w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "S") w.tokens.push_back(Tok::S);
        else if (tok == "T") w.tokens.push_back(Tok::T);
        else if (tok == "T^-1") w.tokens.push_back(Tok::Tinv);
        else if (tok == "T'") w.tokens.push_back(Tok::Tp);
        else if (tok == "T'^-1") w.tokens.push_back(Tok::Tpinv);
        else throw ParseError("GroupWord::parse: unknown token '" + tok + "'");
    }
    return w;
}

std::string GroupWord::str() const {
    std::string out;
    for (Tok t : tokens) {
        if (!out.empty()) out += ' ';
        switch (t) {
            case Tok::S: out += "S"; break;
            case Tok::T: out += "T"; break;
            case Tok::Tinv: out += "T^-1"; break;
            case Tok::Tp: out += "T'"; break;
            case Tok::Tpinv: out += "T'^-1"; break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// FiniteRep
// ---------------------------------------------------------------------------

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

int find_order(const Mat& T, int bound) {
    Mat p = T;
    const Mat id = Mat::Identity(T.rows(), T.cols());
    for (int n = 1; n <= bound; ++n) {
        if (max_abs(p - id) < 1e-10) return n;
        p = p * T;
    }
    return 0;
}

}  // namespace

FiniteRep make_rep(const Mat& S, const Mat& T, int order_bound) {
    if (S.rows() != S.cols() || T.rows() != T.cols() || S.rows() != T.rows())
        throw DimensionError("make_rep: matrices must be square of equal dimension");
    FiniteRep rep;
    rep.dim = static_cast<int>(S.rows());
    rep.mat_S = S;
    rep.mat_T = T;
    rep.order_T = find_order(T, order_bound);
    if (rep.order_T == 0)
        throw OrderNotFoundError("make_rep: no N <= bound with T^N = I");
    return rep;
}

RepReport validate_rep(const FiniteRep& rep, int order_bound) {
    if (rep.mat_S.rows() != rep.mat_S.cols() || rep.mat_T.rows() != rep.mat_T.cols() ||
        rep.mat_S.rows() != rep.mat_T.rows())
        throw DimensionError("validate_rep: matrices must be square of equal dimension");
    const Mat id = Mat::Identity(rep.dim, rep.dim);
    RepReport rpt;
    rpt.err_S2 = max_abs(rep.mat_S * rep.mat_S - id);
    const Mat st = rep.mat_S * rep.mat_T;
    rpt.err_ST3 = max_abs(st * st * st - id);
    rpt.err_unitary_S = max_abs(rep.mat_S.adjoint() * rep.mat_S - id);
    rpt.err_unitary_T = max_abs(rep.mat_T.adjoint() * rep.mat_T - id);
    rpt.order_T = find_order(rep.mat_T, order_bound);
    if (rpt.order_T == 0)
        throw OrderNotFoundError("validate_rep: no N <= bound with T^N = I");
    rpt.pass = rpt.err_S2 < 1e-12 && rpt.err_ST3 < 1e-12 && rpt.err_unitary_S < 1e-12 &&
               rpt.err_unitary_T < 1e-12;
    return rpt;
}

Mat rep_of_word(const FiniteRep& rep, const GroupWord& w) {
    const Mat Tinv = rep.mat_T.inverse();
    Mat m = Mat::Identity(rep.dim, rep.dim);
    for (Tok t : w.tokens) {
        switch (t) {
            case Tok::S: m = m * rep.mat_S; break;
            case Tok::T: m = m * rep.mat_T; break;
            case Tok::Tinv: m = m * Tinv; break;
            case Tok::Tp: m = m * (rep.mat_S * Tinv * rep.mat_S); break;
            case Tok::Tpinv: m = m * (rep.mat_S * rep.mat_T * rep.mat_S); break;
        }
    }
    return m;
}

FiniteRep trivial_rep() {
    Mat one = Mat::Identity(1, 1);
    return make_rep(one, one);
}

FiniteRep s3_sign_rep() {
    Mat s(1, 1), t(1, 1);
    s(0, 0) = -1.0;
    t(0, 0) = -1.0;
    return make_rep(s, t);
}

FiniteRep s3_standard_rep() {
    // Images of the transpositions generating S3: reflections at angle 0 and 2pi/3.
    const double r3 = std::sqrt(3.0);
    Mat s(2, 2), t(2, 2);
    s << 1.0, 0.0, 0.0, -1.0;
    t << -0.5, r3 / 2.0, r3 / 2.0, 0.5;
    return make_rep(s, t);
}

// ---------------------------------------------------------------------------
// Cosets
// ---------------------------------------------------------------------------

namespace {

long long emod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

// Extended gcd: returns g and x, y with a x + b y = g.
long long egcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1, y1;
    long long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Lift bottom row (c, d) mod N to a coprime integer pair, then complete to an
// SL2(Z) matrix with a d - b c = 1.
IMat lift_bottom_row(long long c, long long d, long long N) {
    for (long long dc = 0; dc < N; ++dc) {
        for (long long dd = 0; dd < N; ++dd) {
            long long cc = c + dc * N, dl = d + dd * N;
            if (cc == 0 && dl == 0) continue;
            long long x, y;
            long long g = egcd(dl, cc, x, y);  // x dl + y cc = g
            if (g != 1 && g != -1) continue;
            long long a = x * g, b = -y * g;
            if (a * dl - b * cc == 1) return {a, b, cc, dl};
        }
    }
    throw ConstructionError("lift_bottom_row: no coprime lift found");
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> ps;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

void check_coset_relations(const CosetStructure& c) {
    const int n = static_cast<int>(c.cosets.size());
    auto compose = [&](const std::vector<int>& f, const std::vector<int>& g) {
        std::vector<int> h(n);
        for (int i = 0; i < n; ++i) h[i] = f[g[i]];
        return h;
    };
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    if (compose(c.perm_S, c.perm_S) != id)
        throw ConstructionError("coset structure: perm_S^2 != id");
    std::vector<int> st = compose(c.perm_S, c.perm_T);
    if (compose(st, compose(st, st)) != id)
        throw ConstructionError("coset structure: (perm_S perm_T)^3 != id");
}

}  // namespace

CosetStructure full_group_cosets() {
    CosetStructure c;
    c.kind = SubgroupKind::FullGroup;
    c.level = 1;
    c.cosets.push_back({1, 0, 0, 1});
    c.perm_T = {0};
    c.perm_S = {0};
    return c;
}

CosetStructure gamma0_cosets(int N) {
    if (N < 1) throw DomainError("gamma0_cosets: N >= 1 required");
    if (N == 1) {
        CosetStructure c = full_group_cosets();
        c.kind = SubgroupKind::Gamma0;
        return c;
    }
    // Points of P^1(Z/N): pairs (c : d) with gcd(c, d, N) = 1 modulo units.
    std::map<std::pair<long long, long long>, int> index;
    std::vector<std::pair<long long, long long>> pts;
    std::vector<long long> units;
    for (long long u = 1; u < N; ++u)
        if (std::gcd(u, static_cast<long long>(N)) == 1) units.push_back(u);
    auto canon = [&](long long c, long long d) {
        std::pair<long long, long long> best{N, N};
        for (long long u : units) {
            std::pair<long long, long long> cand{emod(u * c, N), emod(u * d, N)};
            best = std::min(best, cand);
        }
        return best;
    };
    for (long long c = 0; c < N; ++c)
        for (long long d = 0; d < N; ++d) {
            long long g = std::gcd(std::gcd(c, d), static_cast<long long>(N));
            if (g != 1) continue;
            auto key = canon(c, d);
            if (!index.count(key)) {
                index[key] = static_cast<int>(pts.size());
                pts.push_back(key);
            }
        }
    // Index formula N prod_{p | N} (1 + 1/p).
    long long expect = N;
    for (int p : prime_divisors(N)) expect = expect / p * (p + 1);
    if (static_cast<long long>(pts.size()) != expect)
        throw ConstructionError("gamma0_cosets: enumeration disagrees with index formula");

    CosetStructure cs;
    cs.kind = SubgroupKind::Gamma0;
    cs.level = N;
    for (auto& [c, d] : pts) cs.cosets.push_back(lift_bottom_row(c, d, N));
    cs.perm_T.resize(pts.size());
    cs.perm_S.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        auto [c, d] = pts[i];
        cs.perm_T[i] = index.at(canon(c, emod(c + d, N)));   // (c, d) T = (c, c + d)
        cs.perm_S[i] = index.at(canon(emod(d, N), emod(-c, N)));  // (c, d) S = (d, -c)
    }
    check_coset_relations(cs);
    return cs;
}

CosetStructure gamma_principal_cosets(int N) {
    if (N < 1) throw DomainError("gamma_principal_cosets: N >= 1 required");
    if (N == 1) return full_group_cosets();
    // Elements of PSL2(Z/N): det = 1 matrices mod N, modulo +-1.
    auto canon = [&](IMat m) {
        IMat a = {emod(m[0], N), emod(m[1], N), emod(m[2], N), emod(m[3], N)};
        IMat b = {emod(-m[0], N), emod(-m[1], N), emod(-m[2], N), emod(-m[3], N)};
        return std::min(a, b);
    };
    std::map<IMat, int> index;
    std::vector<IMat> elems;
    for (long long a = 0; a < N; ++a)
        for (long long b = 0; b < N; ++b)
            for (long long c = 0; c < N; ++c)
                for (long long d = 0; d < N; ++d) {
                    if (emod(a * d - b * c, N) != 1) continue;
                    IMat key = canon({a, b, c, d});
                    if (!index.count(key)) {
                        index[key] = static_cast<int>(elems.size());
                        elems.push_back(key);
                    }
                }
    // |SL2(Z/N)| = N^3 prod (1 - p^-2); divide by 2 for N > 2.
    long long expect = static_cast<long long>(N) * N * N;
    for (int p : prime_divisors(N)) expect = expect / (p * p) * (p * p - 1);
    if (N > 2) expect /= 2;
    if (static_cast<long long>(elems.size()) != expect)
        throw ConstructionError("gamma_principal_cosets: enumeration disagrees with index formula");

    const IMat Tm = {1, 1, 0, 1}, Sm = {0, -1, 1, 0};
    CosetStructure cs;
    cs.kind = SubgroupKind::GammaPrincipal;
    cs.level = N;
    cs.cosets = elems;
    cs.perm_T.resize(elems.size());
    cs.perm_S.resize(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        cs.perm_T[i] = index.at(canon(imul(elems[i], Tm)));
        cs.perm_S[i] = index.at(canon(imul(elems[i], Sm)));
    }
    check_coset_relations(cs);
    return cs;
}

FiniteRep coset_perm_rep(const CosetStructure& c) {
    check_coset_relations(c);
    const int n = static_cast<int>(c.cosets.size());
    Mat S = Mat::Zero(n, n), T = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        S(c.perm_S[j], j) = 1.0;
        T(c.perm_T[j], j) = 1.0;
    }
    FiniteRep rep = make_rep(S, T);
    if (!validate_rep(rep).pass)
        throw ConstructionError("coset_perm_rep: output fails relation validation");
    return rep;
}

// ---------------------------------------------------------------------------
// S3 machinery
// ---------------------------------------------------------------------------

namespace {

S3Table build_s3_table() {
    const int N = 2;
    auto canon = [&](IMat m) {
        return IMat{emod(m[0], N), emod(m[1], N), emod(m[2], N), emod(m[3], N)};
    };
    const IMat Sm = canon({0, -1, 1, 0}), Tm = {1, 1, 0, 1}, Id = {1, 0, 0, 1};
    std::map<IMat, int> index;
    std::vector<IMat> elems{Id};
    index[Id] = 0;
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const IMat& g : {Sm, Tm}) {
            IMat nxt = canon(imul(elems[head], g));
            if (!index.count(nxt)) {
                index[nxt] = static_cast<int>(elems.size());
                elems.push_back(nxt);
            }
        }
    }
    if (elems.size() != 6) throw ConstructionError("s3_table: expected 6 elements");
    S3Table t;
    for (const IMat& m : elems)
        t.elements.push_back({static_cast<int>(m[0]), static_cast<int>(m[1]),
                              static_cast<int>(m[2]), static_cast<int>(m[3])});
    t.mul.assign(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) t.mul[i][j] = index.at(canon(imul(elems[i], elems[j])));
    t.order.assign(6, 0);
    for (int i = 0; i < 6; ++i) {
        int p = i, n = 1;
        while (p != 0) {
            p = t.mul[p][i];
            ++n;
        }
        t.order[i] = n;
    }
    t.index_S = index.at(Sm);
    t.index_T = index.at(canon(Tm));
    return t;
}

}  // namespace

const S3Table& s3_table() {
    static const S3Table t = build_s3_table();
    return t;
}

std::vector<cplx> s3_character(const std::string& name) {
    const S3Table& t = s3_table();
    std::vector<cplx> chi(6);
    for (int i = 0; i < 6; ++i) {
        if (name == "trivial") chi[i] = 1.0;
        else if (name == "sign") chi[i] = t.order[i] == 2 ? -1.0 : 1.0;
        else if (name == "standard")
            chi[i] = t.order[i] == 1 ? 2.0 : (t.order[i] == 2 ? 0.0 : -1.0);
        else throw InputError("s3_character: unknown character '" + name + "'");
    }
    return chi;
}

std::vector<Mat> s3_regular_action() {
    const S3Table& t = s3_table();
    std::vector<Mat> act(6, Mat::Zero(6, 6));
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h) act[g](t.mul[g][h], h) = 1.0;  // e_h -> e_{g h}
    return act;
}

Mat isotypic_projector(const std::vector<Mat>& action, const std::vector<cplx>& character,
                       int d_eta, int group_order) {
    if (action.size() != character.size() ||
        static_cast<int>(action.size()) != group_order)
        throw InputError("isotypic_projector: character/table size mismatch");
    if (action.empty()) throw InputError("isotypic_projector: empty action");
    Mat P = Mat::Zero(action[0].rows(), action[0].cols());
    for (size_t g = 0; g < action.size(); ++g) P += std::conj(character[g]) * action[g];
    return (static_cast<double>(d_eta) / group_order) * P;
}

int invariant_subspace_dim(const FiniteRep& rep, const std::vector<GroupWord>& words) {
    Mat A = Mat::Zero(rep.dim, rep.dim);
    const Mat id = Mat::Identity(rep.dim, rep.dim);
    for (const GroupWord& w : words) {
        Mat d = id - rep_of_word(rep, w);
        A += d.adjoint() * d;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    int count = 0;
    for (int i = 0; i < rep.dim; ++i)
        if (es.eigenvalues()[i] < 1e-8) ++count;
    return count;
}

}  // namespace finrep
}  // namespace lewisper
