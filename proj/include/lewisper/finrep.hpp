#pragma once

#include <array>
#include <string>
#include <vector>

#include "lewisper/types.hpp"

namespace lewisper {
namespace finrep {

// Letters of the modular-group alphabet used by words: S, T, T^-1, and the
// second semigroup generator T' = S T^-1 S with its inverse.
enum class Tok { S, T, Tinv, Tp, Tpinv };

struct GroupWord {
    std::vector<Tok> tokens;

    // Signed product of the generator matrices, determinant 1; as an element
    // of PSL2(Z) it is defined up to global sign.
    std::array<long long, 4> int_matrix() const;  // row-major a, b, c, d

    GroupWord concat(const GroupWord& other) const;
    static GroupWord parse(const std::string& text);  // tokens like "S T T' T^-1"
    std::string str() const;
};

struct FiniteRep {
    int dim = 0;
    Mat mat_S;
    Mat mat_T;
    int order_T = 0;  // minimal N with mat_T^N = I
};

struct RepReport {
    double err_S2 = 0.0;
    double err_ST3 = 0.0;
    double err_unitary_S = 0.0;
    double err_unitary_T = 0.0;
    int order_T = 0;
    bool pass = false;
};

// Builds a FiniteRep from matrices, computing order_T (bound default 120).
FiniteRep make_rep(const Mat& S, const Mat& T, int order_bound = 120);

// Residuals of the defining relations plus unitarity; pass iff all < 1e-12.
RepReport validate_rep(const FiniteRep& rep, int order_bound = 120);

// Product of generator images in token order; eta(T') = eta(S) eta(T)^-1 eta(S).
Mat rep_of_word(const FiniteRep& rep, const GroupWord& w);

// Shipped representations.
FiniteRep trivial_rep();
FiniteRep s3_sign_rep();      // 1-dim sign character of S3 = PSL2(F2)
FiniteRep s3_standard_rep();  // 2-dim standard irrep of S3

// ---------------------------------------------------------------------------
// Coset structures for submodular subgroups
// ---------------------------------------------------------------------------

enum class SubgroupKind { FullGroup, Gamma0, GammaPrincipal };

struct CosetStructure {
    SubgroupKind kind = SubgroupKind::FullGroup;
    int level = 1;
    std::vector<std::array<long long, 4>> cosets;  // representatives mod +-1
    std::vector<int> perm_T;
    std::vector<int> perm_S;
};

CosetStructure full_group_cosets();
CosetStructure gamma0_cosets(int N);           // index N prod (1 + 1/p)
CosetStructure gamma_principal_cosets(int N);  // PSL2(Z/N) element count

// Permutation representation on coset indices; passes validate_rep.
FiniteRep coset_perm_rep(const CosetStructure& c);

// ---------------------------------------------------------------------------
// S3 character machinery
// ---------------------------------------------------------------------------

// The six elements of PSL2(F2), BFS-enumerated from the identity; index 0 is e.
struct S3Table {
    std::vector<std::array<int, 4>> elements;   // 2x2 matrices mod 2
    std::vector<std::vector<int>> mul;          // mul[i][j] = index of g_i g_j
    std::vector<int> order;                     // element orders
    int index_S = -1, index_T = -1;
};
const S3Table& s3_table();

// Characters aligned with s3_table() element order.
std::vector<cplx> s3_character(const std::string& name);  // trivial | sign | standard

// Left regular representation matrices aligned with s3_table().
std::vector<Mat> s3_regular_action();

// P = (d_eta / |G|) sum_gamma conj(tr eta(gamma)) action(gamma).
Mat isotypic_projector(const std::vector<Mat>& action, const std::vector<cplx>& character,
                       int d_eta, int group_order);

// Dimension of the joint fixed space of eta(w) over the listed words.
int invariant_subspace_dim(const FiniteRep& rep, const std::vector<GroupWord>& words);

}  // namespace finrep
}  // namespace lewisper
