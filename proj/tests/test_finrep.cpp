#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "lewisper/errors.hpp"
#include "lewisper/finrep.hpp"
#include "helpers.hpp"

using namespace lewisper;
using namespace lewisper::finrep;

namespace {

bool same_up_to_sign(const std::array<long long, 4>& a, const std::array<long long, 4>& b) {
    bool eq = true, neg = true;
    for (int i = 0; i < 4; ++i) {
        eq = eq && a[i] == b[i];
        neg = neg && a[i] == -b[i];
    }
    return eq || neg;
}

}  // namespace

TEST_CASE("shipped representations satisfy the defining relations") {
    for (const auto& rep : {trivial_rep(), s3_sign_rep(), s3_standard_rep()}) {
        const auto rpt = validate_rep(rep);
        CHECK(rpt.pass);
        CHECK(rpt.err_S2 < 1e-12);
        CHECK(rpt.err_ST3 < 1e-12);
        CHECK(rpt.err_unitary_S < 1e-12);
        CHECK(rpt.err_unitary_T < 1e-12);
    }
    CHECK(trivial_rep().order_T == 1);
    CHECK(s3_sign_rep().order_T == 2);
    CHECK(s3_standard_rep().order_T == 2);
    CHECK(s3_standard_rep().dim == 2);
}

TEST_CASE("broken representations are rejected") {
    Mat s(1, 1), t(1, 1);
    s(0, 0) = 0.5;
    t(0, 0) = 1.0;
    const auto rep = make_rep(s, t);
    CHECK_FALSE(validate_rep(rep).pass);

    t(0, 0) = 2.0;  // no finite order
    s(0, 0) = 1.0;
    CHECK_THROWS_AS((void)make_rep(s, t), OrderNotFoundError);
}

TEST_CASE("group words multiply like the integer matrices") {
    // (S T^-1)^2 = T S up to the central sign.
    CHECK(same_up_to_sign(GroupWord::parse("S T^-1 S T^-1").int_matrix(),
                          GroupWord::parse("T S").int_matrix()));
    // T' is shorthand for S T^-1 S.
    CHECK(same_up_to_sign(GroupWord::parse("T'").int_matrix(),
                          GroupWord::parse("S T^-1 S").int_matrix()));
    const auto tp = GroupWord::parse("T'").int_matrix();
    CHECK(same_up_to_sign(tp, {1, 0, 1, 1}));
    // Round trip through the printed form.
    const auto w = GroupWord::parse("S T T' T^-1 T'^-1");
    CHECK(same_up_to_sign(GroupWord::parse(w.str()).int_matrix(), w.int_matrix()));
    CHECK_THROWS_AS((void)GroupWord::parse("S Q"), ParseError);
}

TEST_CASE("rep_of_word is a homomorphism") {
    const auto rep = s3_standard_rep();
    std::mt19937 rng(321);
    std::uniform_int_distribution<int> len(0, 6), tok(0, 4);
    const char* names[] = {"S", "T", "T^-1", "T'", "T'^-1"};
    for (int trial = 0; trial < 24; ++trial) {
        std::string w1, w2;
        for (int i = len(rng); i > 0; --i) w1 += std::string(names[tok(rng)]) + " ";
        for (int i = len(rng); i > 0; --i) w2 += std::string(names[tok(rng)]) + " ";
        const auto a = GroupWord::parse(w1), b = GroupWord::parse(w2);
        const Mat lhs = rep_of_word(rep, a.concat(b));
        const Mat rhs = rep_of_word(rep, a) * rep_of_word(rep, b);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
    // eta(T') agrees with the composite S T^-1 S.
    const Mat lhs = rep_of_word(rep, GroupWord::parse("T'"));
    const Mat rhs = rep.mat_S * rep.mat_T.inverse() * rep.mat_S;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coset structures for the standard subgroups") {
    const auto full = full_group_cosets();
    CHECK(full.cosets.size() == 1);

    const auto g02 = gamma0_cosets(2);
    CHECK(g02.cosets.size() == 3);
    int fixed = 0;
    for (size_t i = 0; i < g02.perm_T.size(); ++i)
        if (g02.perm_T[i] == static_cast<int>(i)) ++fixed;
    CHECK(fixed == 1);  // one width-1 cusp, one width-2 cusp

    const auto g03 = gamma0_cosets(3);
    CHECK(g03.cosets.size() == 4);

    const auto gp2 = gamma_principal_cosets(2);
    CHECK(gp2.cosets.size() == 6);

    for (const auto& c : {full, g02, g03, gp2}) {
        const auto rep = coset_perm_rep(c);
        CHECK(validate_rep(rep).pass);
        CHECK(rep.dim == static_cast<int>(c.cosets.size()));
    }
}

TEST_CASE("six-element group table") {
    const auto& tab = s3_table();
    CHECK(tab.elements.size() == 6);
    CHECK(tab.mul.size() == 6);
    CHECK(tab.index_S >= 0);
    CHECK(tab.index_T >= 0);
    // Identity first, orders come out as 1, three 2s, two 3s.
    CHECK(tab.order[0] == 1);
    std::multiset<int> orders(tab.order.begin(), tab.order.end());
    CHECK(orders == std::multiset<int>({1, 2, 2, 2, 3, 3}));
    CHECK(tab.order[tab.index_S] == 2);
    CHECK(tab.order[tab.index_T] == 2);
    // Closure and associativity spot checks.
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            CHECK(tab.mul[i][j] >= 0);
            CHECK(tab.mul[i][j] < 6);
            CHECK(tab.mul[0][j] == j);
            CHECK(tab.mul[i][0] == i);
        }
}

TEST_CASE("characters and isotypic projectors of the regular action") {
    const auto& tab = s3_table();
    const auto chi_triv = s3_character("trivial");
    const auto chi_sign = s3_character("sign");
    const auto chi_std = s3_character("standard");
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(chi_triv[i] - 1.0) < 1e-14);
        CHECK(std::abs(std::abs(chi_sign[i]) - 1.0) < 1e-14);
    }
    CHECK(std::abs(chi_sign[tab.index_S] + 1.0) < 1e-14);
    CHECK(std::abs(chi_std[0] - 2.0) < 1e-14);
    auto norm2 = [&](const std::vector<cplx>& chi) {
        double s = 0.0;
        for (const auto& c : chi) s += std::norm(c);
        return s;
    };
    CHECK(std::abs(norm2(chi_triv) - 6.0) < 1e-12);
    CHECK(std::abs(norm2(chi_sign) - 6.0) < 1e-12);
    CHECK(std::abs(norm2(chi_std) - 6.0) < 1e-12);

    const auto action = s3_regular_action();
    const Mat p1 = isotypic_projector(action, chi_triv, 1, 6);
    const Mat p2 = isotypic_projector(action, chi_sign, 1, 6);
    const Mat p3 = isotypic_projector(action, chi_std, 2, 6);
    const Mat eye = Mat::Identity(6, 6);
    CHECK((p1 + p2 + p3 - eye).cwiseAbs().maxCoeff() < 1e-12);
    for (const Mat& p : {p1, p2, p3})
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p1 * p2).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p1 * p3).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p2 * p3).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(p1.trace() - 1.0) < 1e-12);
    CHECK(std::abs(p2.trace() - 1.0) < 1e-12);
    CHECK(std::abs(p3.trace() - 4.0) < 1e-12);
    // Trivial projector averages: every row of p1 is the uniform vector.
    CHECK(std::abs(p1(0, 0) - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("joint invariant subspace dimensions") {
    const std::vector<GroupWord> gens = {GroupWord::parse("S"), GroupWord::parse("T")};
    CHECK(invariant_subspace_dim(trivial_rep(), gens) == 1);
    CHECK(invariant_subspace_dim(s3_sign_rep(), gens) == 0);
    CHECK(invariant_subspace_dim(s3_standard_rep(), gens) == 0);
    CHECK(invariant_subspace_dim(s3_standard_rep(), {GroupWord::parse("T")}) == 1);
    CHECK(invariant_subspace_dim(coset_perm_rep(gamma0_cosets(2)), gens) == 1);
    CHECK(invariant_subspace_dim(coset_perm_rep(gamma_principal_cosets(2)), gens) == 1);
}
