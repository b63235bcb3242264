#include "essint/geom.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "essint/errors.hpp"
#include "essint/lp.hpp"
#include "essint/nnls.hpp"
#include "essint/qp.hpp"

namespace essint {

namespace {

constexpr double kRankTol = 1e-9;

bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a(i) < b(i) - 1e-12) return true;
        if (a(i) > b(i) + 1e-12) return false;
    }
    return false;
}

std::vector<Vec> matrix_cols(const Mat& G) {
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(G.cols()));
    for (int j = 0; j < G.cols(); ++j) out.push_back(G.col(j));
    return out;
}

Mat cols_to_matrix(const std::vector<Vec>& cols, int dim) {
    Mat G(dim, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) G.col(j) = cols[static_cast<std::size_t>(j)];
    return G;
}

// Visit all k-element subsets of {0..m-1} in lexicographic order.
template <typename F>
void for_each_subset(int m, int k, F&& visit) {
    if (k > m || k < 0) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

// ---- basic types ------------------------------------------------------------

Polyhedron::Polyhedron(Mat A, Vec b) : A_(std::move(A)), b_(std::move(b)) {
    if (A_.rows() != b_.size()) throw Error("polyhedron: A rows and b length differ");
    if (A_.cols() == 0) throw Error("polyhedron: ambient dimension must be positive");
    if (A_.rows() == 0) {
        empty_ = false;
    } else {
        empty_ = lp_feasible_point(A_, b_, empty_matrix(static_cast<int>(A_.cols())),
                                   empty_vector()).status == LPStatus::Infeasible;
    }
}

bool Polyhedron::contains(const Vec& x, double tol) const {
    if (rows() == 0) return true;
    return (A_ * x - b_).maxCoeff() <= tol;
}

std::vector<int> Polyhedron::active_rows(const Vec& x, double active_tol) const {
    std::vector<int> out;
    for (int i = 0; i < rows(); ++i)
        if (std::abs(A_.row(i).dot(x) - b_(i)) <= active_tol) out.push_back(i);
    return out;
}

Polyhedron Polyhedron::shifted(const Vec& a) const {
    if (rows() == 0) return *this;
    return Polyhedron(A_, b_ - A_ * a);
}

SetValue::SetValue(std::vector<Polyhedron> pieces) {
    for (auto& p : pieces)
        if (!p.is_empty()) pieces_.push_back(std::move(p));
    if (pieces_.empty()) throw EmptySetError("set value: all pieces are empty");
    for (const auto& p : pieces_)
        if (p.dim() != pieces_.front().dim())
            throw Error("set value: pieces have mixed ambient dimensions");
}

bool SetValue::contains(const Vec& x, double tol) const {
    for (const auto& p : pieces_)
        if (p.contains(x, tol)) return true;
    return false;
}

SetValue SetValue::shifted(const Vec& a) const {
    std::vector<Polyhedron> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(p.shifted(a));
    return SetValue(std::move(out));
}

FinCone::FinCone(Mat generators) : G_(std::move(generators)) {
    if (G_.rows() == 0) throw Error("cone: ambient dimension must be positive");
    // Drop numerically zero generators; the empty set of generators is {0}.
    std::vector<Vec> keep;
    for (int j = 0; j < G_.cols(); ++j)
        if (G_.col(j).lpNorm<Eigen::Infinity>() > 1e-12) keep.push_back(G_.col(j));
    if (static_cast<int>(keep.size()) != G_.cols())
        G_ = cols_to_matrix(keep, static_cast<int>(G_.rows()));
}

bool FinCone::is_trivial(double) const { return G_.cols() == 0; }

std::optional<Vec> FinCone::member_multipliers(const Vec& v, double tol) const {
    if (count() == 0) {
        if (v.lpNorm<Eigen::Infinity>() <= tol) return Vec(Vec::Zero(0));
        return std::nullopt;
    }
    NNLSResult r = solve_nnls(G_, v);
    if (r.residual.lpNorm<Eigen::Infinity>() <= tol) return r.x;
    return std::nullopt;
}

bool FinCone::contains(const Vec& v, double tol) const {
    return member_multipliers(v, tol).has_value();
}

HCone::HCone(Mat A) : A_(std::move(A)) {
    if (A_.cols() == 0) throw Error("cone: ambient dimension must be positive");
}

bool HCone::contains(const Vec& v, double tol) const {
    if (A_.rows() == 0) return true;
    return (A_ * v).maxCoeff() <= tol;
}

ConeUnion::ConeUnion(std::vector<FinCone> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw Error("cone union: no parts");
    for (const auto& c : parts_)
        if (c.dim() != parts_.front().dim())
            throw Error("cone union: parts have mixed ambient dimensions");
}

bool ConeUnion::contains(const Vec& v, double tol) const {
    for (const auto& c : parts_)
        if (c.contains(v, tol)) return true;
    return false;
}

Mat ConeUnion::pooled_generators() const {
    std::vector<Vec> cols;
    for (const auto& c : parts_)
        for (int j = 0; j < c.count(); ++j) cols.push_back(c.generators().col(j));
    return cols_to_matrix(cols, dim());
}

// ---- projections ------------------------------------------------------------

ProjectionResult project_detailed(const Polyhedron& P, const Vec& z) {
    if (P.is_empty()) throw EmptySetError("project: polyhedron is empty");
    if (P.rows() == 0) return {z, Vec(Vec::Zero(0)), 0.0};
    const int n = P.dim();
    Mat Q = 2.0 * Mat::Identity(n, n);
    QPResult r = solve_qp(Q, -2.0 * z, P.A(), P.b(), empty_matrix(n), empty_vector());
    if (r.status != QPStatus::Optimal) throw Error("project: QP did not converge");
    return {r.z, r.lambda, r.kkt_residual};
}

Vec project(const Polyhedron& P, const Vec& z) { return project_detailed(P, z).point; }

Vec project(const SetValue& S, const Vec& z) {
    double best = std::numeric_limits<double>::infinity();
    Vec out;
    for (const auto& p : S.pieces()) {
        Vec y = project(p, z);
        double d = (y - z).norm();
        if (d < best - 1e-12) {
            best = d;
            out = y;
        }
    }
    return out;
}

double distance(const Polyhedron& P, const Vec& z) {
    if (P.is_empty()) return std::numeric_limits<double>::infinity();
    return (project(P, z) - z).norm();
}

double distance(const SetValue& S, const Vec& z) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : S.pieces()) best = std::min(best, distance(p, z));
    return best;
}

// ---- canonical forms ---------------------------------------------------------

Mat canonical_generators(const Mat& G) {
    std::vector<Vec> cols;
    for (int j = 0; j < G.cols(); ++j) {
        double s = G.col(j).lpNorm<Eigen::Infinity>();
        if (s > 1e-12) cols.push_back(G.col(j) / s);
    }
    std::sort(cols.begin(), cols.end(), lex_less);
    std::vector<Vec> dedup;
    for (const auto& c : cols) {
        if (dedup.empty() || (dedup.back() - c).lpNorm<Eigen::Infinity>() > 1e-9)
            dedup.push_back(c);
    }
    return cols_to_matrix(dedup, static_cast<int>(G.rows()));
}

FinCone reduce_generators(const FinCone& C) {
    std::vector<Vec> gens = matrix_cols(canonical_generators(C.generators()));
    std::vector<bool> removed(gens.size(), false);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<Vec> rest;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i && !removed[j]) rest.push_back(gens[j]);
        FinCone sub(cols_to_matrix(rest, C.dim()));
        if (sub.contains(gens[i], 1e-9)) removed[i] = true;
    }
    std::vector<Vec> keep;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!removed[i]) keep.push_back(gens[i]);
    return FinCone(cols_to_matrix(keep, C.dim()));
}

std::vector<FinCone> prune_parts(std::vector<FinCone> parts) {
    for (auto& c : parts) c = reduce_generators(c);
    std::sort(parts.begin(), parts.end(), [](const FinCone& a, const FinCone& b) {
        if (a.count() != b.count()) return a.count() > b.count();
        for (int j = 0; j < a.count(); ++j) {
            if (lex_less(a.generators().col(j), b.generators().col(j))) return true;
            if (lex_less(b.generators().col(j), a.generators().col(j))) return false;
        }
        return false;
    });
    auto subset = [](const FinCone& inner, const FinCone& outer) {
        for (int j = 0; j < inner.count(); ++j)
            if (!outer.contains(inner.generators().col(j), 1e-9)) return false;
        return true;
    };
    std::vector<bool> removed(parts.size(), false);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (i == j || removed[i] || removed[j]) continue;
            if (subset(parts[i], parts[j]) && (!subset(parts[j], parts[i]) || j < i)) {
                removed[i] = true;
            }
        }
    }
    std::vector<FinCone> out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (!removed[i]) out.push_back(parts[i]);
    if (out.empty() && !parts.empty()) out.push_back(parts.front());
    return out;
}

// ---- representation conversions ----------------------------------------------

FinCone rays(const HCone& H) {
    const int n = H.dim();
    if (n > kMaxEnumerationDim)
        throw DimensionTooLargeError("rays: ambient dimension " + std::to_string(n) +
                                     " exceeds the enumeration guard");
    std::vector<Vec> rows_keep;
    for (int i = 0; i < H.A().rows(); ++i)
        if (H.A().row(i).lpNorm<Eigen::Infinity>() > 1e-12)
            rows_keep.push_back(H.A().row(i).transpose());
    const int m = static_cast<int>(rows_keep.size());
    std::vector<Vec> gens;
    if (m == 0) {
        for (int i = 0; i < n; ++i) {
            gens.push_back(Vec::Unit(n, i));
            gens.push_back(-Vec::Unit(n, i));
        }
        return FinCone(canonical_generators(cols_to_matrix(gens, n)));
    }
    Mat A(m, n);
    for (int i = 0; i < m; ++i) A.row(i) = rows_keep[static_cast<std::size_t>(i)].transpose();

    Eigen::FullPivLU<Mat> lu(A);
    lu.setThreshold(kRankTol);
    const int r = static_cast<int>(lu.rank());
    if (r < n) {
        Mat L = lu.kernel();  // n x (n - r)
        Eigen::HouseholderQR<Mat> qr(L);
        Mat QL = qr.householderQ() * Mat::Identity(n, static_cast<int>(L.cols()));
        for (int j = 0; j < QL.cols(); ++j) {
            gens.push_back(QL.col(j));
            gens.push_back(-QL.col(j));
        }
    }
    // Orthonormal basis of the row space; the pointed part lives there.
    Eigen::ColPivHouseholderQR<Mat> qrt(A.transpose());
    Mat B = qrt.householderQ() * Mat::Identity(n, r);
    Mat Ap = A * B;  // m x r

    if (r == 1) {
        for (double s : {1.0, -1.0}) {
            Vec d(1);
            d(0) = s;
            if ((Ap * d).maxCoeff() <= kRankTol) gens.push_back(B * d);
        }
    } else {
        for_each_subset(m, r - 1, [&](const std::vector<int>& idx) {
            Mat As(r - 1, r);
            for (int k = 0; k < r - 1; ++k) As.row(k) = Ap.row(idx[static_cast<std::size_t>(k)]);
            Eigen::FullPivLU<Mat> lus(As);
            lus.setThreshold(kRankTol);
            if (static_cast<int>(lus.rank()) != r - 1) return;
            Vec d = lus.kernel().col(0);
            d.normalize();
            for (double s : {1.0, -1.0}) {
                if ((Ap * (s * d)).maxCoeff() <= kRankTol) gens.push_back(B * (s * d));
            }
        });
    }
    return FinCone(canonical_generators(cols_to_matrix(gens, n)));
}

HCone polar(const FinCone& C) { return HCone(C.generators().transpose()); }

FinCone polar_inv(const HCone& H) { return FinCone(H.A().transpose()); }

HCone halfspaces(const FinCone& C) {
    FinCone dual_rays = rays(polar(C));
    return HCone(dual_rays.generators().transpose());
}

FinCone intersect_cones(const std::vector<FinCone>& cones) {
    if (cones.empty()) throw Error("intersect: no cones");
    if (cones.size() == 1) return reduce_generators(cones.front());
    const int n = cones.front().dim();
    std::vector<Mat> blocks;
    int total = 0;
    for (const auto& c : cones) {
        Mat Hc = halfspaces(c).A();
        total += static_cast<int>(Hc.rows());
        blocks.push_back(std::move(Hc));
    }
    Mat A(total, n);
    int at = 0;
    for (const auto& blk : blocks) {
        A.middleRows(at, blk.rows()) = blk;
        at += static_cast<int>(blk.rows());
    }
    return rays(HCone(A));
}

// ---- tangent and normal cones --------------------------------------------------

namespace {

std::vector<int> pieces_containing(const SetValue& S, const Vec& x, double tol) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(S.pieces().size()); ++i)
        if (S.pieces()[static_cast<std::size_t>(i)].contains(x, tol)) out.push_back(i);
    return out;
}

Mat rows_subset(const Polyhedron& P, const std::vector<int>& rows) {
    Mat A(static_cast<int>(rows.size()), P.dim());
    for (int k = 0; k < static_cast<int>(rows.size()); ++k)
        A.row(k) = P.A().row(rows[static_cast<std::size_t>(k)]);
    return A;
}

}  // namespace

ConeUnion tangent_cone(const SetValue& S, const Vec& x, double active_tol, double tol) {
    std::vector<int> in = pieces_containing(S, x, tol);
    if (in.empty()) throw NotMemberError("tangent cone: point is not in the set");
    std::vector<FinCone> parts;
    for (int pi : in) {
        const Polyhedron& P = S.pieces()[static_cast<std::size_t>(pi)];
        Mat Aact = rows_subset(P, P.active_rows(x, active_tol));
        parts.push_back(rays(HCone(Aact.rows() ? Aact : Mat(0, P.dim()))));
    }
    return ConeUnion(prune_parts(std::move(parts)));
}

HCone regular_normal_cone(const SetValue& S, const Vec& x, double active_tol, double tol) {
    ConeUnion T = tangent_cone(S, x, active_tol, tol);
    return HCone(T.pooled_generators().transpose());
}

bool regular_normal_member(const SetValue& S, const Vec& x, const Vec& v,
                           double active_tol, double tol) {
    std::vector<int> in = pieces_containing(S, x, tol);
    if (in.empty()) throw NotMemberError("regular normal cone: point is not in the set");
    for (int pi : in) {
        const Polyhedron& P = S.pieces()[static_cast<std::size_t>(pi)];
        Mat Aact = rows_subset(P, P.active_rows(x, active_tol));
        FinCone rowcone(Aact.transpose());
        if (!rowcone.contains(v, tol)) return false;
    }
    return true;
}

double regular_normal_distance(const SetValue& S, const Vec& x, const Vec& v,
                               double active_tol, double tol) {
    std::vector<int> in = pieces_containing(S, x, tol);
    if (in.empty()) throw NotMemberError("regular normal cone: point is not in the set");
    const int n = S.dim();
    // min ||v - w||^2 over w in the intersection of the per-piece row cones,
    // written with explicit multipliers: w = R_p' lambda_p for every piece.
    std::vector<Mat> Rt;  // n x k_p blocks
    int k_total = 0;
    for (int pi : in) {
        const Polyhedron& P = S.pieces()[static_cast<std::size_t>(pi)];
        Mat Aact = rows_subset(P, P.active_rows(x, active_tol));
        Rt.push_back(Aact.transpose());
        k_total += static_cast<int>(Aact.rows());
    }
    const int nv = n + k_total;
    Mat Q = Mat::Zero(nv, nv);
    Q.topLeftCorner(n, n) = 2.0 * Mat::Identity(n, n);
    Vec c = Vec::Zero(nv);
    c.head(n) = -2.0 * v;
    Mat E = Mat::Zero(n * static_cast<int>(in.size()), nv);
    int at = n;
    for (int p = 0; p < static_cast<int>(in.size()); ++p) {
        E.block(p * n, 0, n, n) = Mat::Identity(n, n);
        const Mat& R = Rt[static_cast<std::size_t>(p)];
        E.block(p * n, at, n, static_cast<int>(R.cols())) = -R;
        at += static_cast<int>(R.cols());
    }
    Mat G = Mat::Zero(k_total, nv);
    G.rightCols(k_total) = -Mat::Identity(k_total, k_total);
    QPResult r = solve_qp_from(Q, c, G, Vec::Zero(k_total), E, Vec::Zero(E.rows()),
                               Vec::Zero(nv));
    if (r.status != QPStatus::Optimal) throw Error("regular normal distance: QP failed");
    return (v - r.z.head(n)).norm();
}

// ---- activity patterns ----------------------------------------------------------

namespace {

struct PieceOption {
    bool out = false;
    int out_row = -1;
    std::vector<int> active;  // meaningful when !out
};

}  // namespace

std::vector<ActivityPattern> admissible_patterns(const SetValue& S, const Vec& x,
                                                 double delta, double active_tol,
                                                 double tol, long budget) {
    std::vector<int> in = pieces_containing(S, x, tol);
    if (in.empty()) throw NotMemberError("activity patterns: point is not in the set");
    const int n = S.dim();

    std::vector<std::vector<PieceOption>> options;
    double combos = 1.0;
    for (int pi : in) {
        const Polyhedron& P = S.pieces()[static_cast<std::size_t>(pi)];
        std::vector<int> act = P.active_rows(x, active_tol);
        std::vector<PieceOption> opts;
        const int a = static_cast<int>(act.size());
        if (a > 20) throw SelectionBlowupError("activity patterns: too many active rows");
        for (int mask = 0; mask < (1 << a); ++mask) {
            PieceOption o;
            for (int k = 0; k < a; ++k)
                if (mask & (1 << k)) o.active.push_back(act[static_cast<std::size_t>(k)]);
            opts.push_back(std::move(o));
        }
        for (int k = 0; k < a; ++k) {
            PieceOption o;
            o.out = true;
            o.out_row = act[static_cast<std::size_t>(k)];
            opts.push_back(std::move(o));
        }
        combos *= static_cast<double>(opts.size());
        options.push_back(std::move(opts));
    }
    if (combos > static_cast<double>(budget))
        throw SelectionBlowupError("activity patterns: combination budget exceeded");

    std::set<std::pair<std::vector<int>, std::vector<std::vector<int>>>> seen;
    std::vector<ActivityPattern> out;
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
        // Assemble the probe LP for this combination of piece options.
        bool any_in = false;
        std::vector<Eigen::RowVectorXd> eq_rows, ub_rows;
        std::vector<double> ub_rhs;
        for (std::size_t p = 0; p < options.size(); ++p) {
            const PieceOption& o = options[p][pick[p]];
            const Polyhedron& P = S.pieces()[static_cast<std::size_t>(in[p])];
            std::vector<int> act = P.active_rows(x, active_tol);
            if (o.out) {
                ub_rows.push_back(-P.A().row(o.out_row));
                ub_rhs.push_back(-delta);
            } else {
                any_in = true;
                for (int row : act) {
                    bool kept = std::find(o.active.begin(), o.active.end(), row) != o.active.end();
                    if (kept) {
                        eq_rows.push_back(P.A().row(row));
                    } else {
                        ub_rows.push_back(P.A().row(row));
                        ub_rhs.push_back(-delta);
                    }
                }
            }
        }
        if (any_in) {
            Mat A_eq(static_cast<int>(eq_rows.size()), n);
            for (int k = 0; k < A_eq.rows(); ++k) A_eq.row(k) = eq_rows[static_cast<std::size_t>(k)];
            Mat A_ub(static_cast<int>(ub_rows.size()) + 2 * n, n);
            Vec b_ub(A_ub.rows());
            for (int k = 0; k < static_cast<int>(ub_rows.size()); ++k) {
                A_ub.row(k) = ub_rows[static_cast<std::size_t>(k)];
                b_ub(k) = ub_rhs[static_cast<std::size_t>(k)];
            }
            for (int i = 0; i < n; ++i) {
                A_ub.row(static_cast<int>(ub_rows.size()) + 2 * i) = Eigen::RowVectorXd::Unit(n, i);
                A_ub.row(static_cast<int>(ub_rows.size()) + 2 * i + 1) = -Eigen::RowVectorXd::Unit(n, i);
                b_ub(static_cast<int>(ub_rows.size()) + 2 * i) = 1.0;
                b_ub(static_cast<int>(ub_rows.size()) + 2 * i + 1) = 1.0;
            }
            LPResult lp = lp_feasible_point(A_ub, b_ub, A_eq, Vec::Zero(A_eq.rows()));
            if (lp.status == LPStatus::Optimal) {
                ActivityPattern pat;
                for (std::size_t p = 0; p < options.size(); ++p) {
                    const PieceOption& o = options[p][pick[p]];
                    if (o.out) continue;
                    pat.in_pieces.push_back(in[p]);
                    std::vector<int> sorted = o.active;
                    std::sort(sorted.begin(), sorted.end());
                    pat.active.push_back(std::move(sorted));
                }
                if (seen.insert({pat.in_pieces, pat.active}).second) out.push_back(std::move(pat));
            }
        }
        std::size_t p = 0;
        while (p < pick.size() && ++pick[p] == options[p].size()) {
            pick[p] = 0;
            ++p;
        }
        if (p == pick.size()) break;
    }
    return out;
}

bool pattern_normal_member(const SetValue& S, const ActivityPattern& pat,
                           const Vec& v, double tol) {
    for (std::size_t k = 0; k < pat.in_pieces.size(); ++k) {
        const Polyhedron& P = S.pieces()[static_cast<std::size_t>(pat.in_pieces[k])];
        FinCone rowcone(rows_subset(P, pat.active[k]).transpose());
        if (!rowcone.contains(v, tol)) return false;
    }
    return true;
}

FinCone pattern_normal_cone(const SetValue& S, const ActivityPattern& pat) {
    std::vector<FinCone> cones;
    for (std::size_t k = 0; k < pat.in_pieces.size(); ++k) {
        const Polyhedron& P = S.pieces()[static_cast<std::size_t>(pat.in_pieces[k])];
        cones.push_back(FinCone(rows_subset(P, pat.active[k]).transpose()));
    }
    return intersect_cones(cones);
}

ConeUnion limiting_normal_cone(const SetValue& S, const Vec& x, double delta,
                               double active_tol, double tol, long budget) {
    if (S.dim() > kMaxEnumerationDim)
        throw DimensionTooLargeError("limiting normal cone: dimension exceeds the enumeration guard");
    std::vector<ActivityPattern> pats = admissible_patterns(S, x, delta, active_tol, tol, budget);
    std::vector<FinCone> parts;
    for (const auto& pat : pats) parts.push_back(pattern_normal_cone(S, pat));
    return ConeUnion(prune_parts(std::move(parts)));
}

bool limiting_normal_member(const SetValue& S, const Vec& x, const Vec& v, double delta,
                            double active_tol, double tol, long budget) {
    std::vector<ActivityPattern> pats = admissible_patterns(S, x, delta, active_tol, tol, budget);
    for (const auto& pat : pats)
        if (pattern_normal_member(S, pat, v, tol)) return true;
    return false;
}

// ---- utilities ----------------------------------------------------------------

bool in_relative_interior(const Vec& v, const FinCone& C, double tol) {
    if (C.count() == 0) return v.lpNorm<Eigen::Infinity>() <= tol;
    const int k = C.count();
    // max t subject to G lambda = v, lambda_i >= t, t <= 1.
    Vec c = Vec::Zero(k + 1);
    c(k) = -1.0;
    Mat A_ub = Mat::Zero(k + 1, k + 1);
    Vec b_ub = Vec::Zero(k + 1);
    for (int i = 0; i < k; ++i) {
        A_ub(i, i) = -1.0;
        A_ub(i, k) = 1.0;
    }
    A_ub(k, k) = 1.0;
    b_ub(k) = 1.0;
    Mat A_eq = Mat::Zero(C.dim(), k + 1);
    A_eq.leftCols(k) = C.generators();
    LPResult lp = solve_lp(c, A_ub, b_ub, A_eq, v);
    return lp.status == LPStatus::Optimal && -lp.objective > tol;
}

Vec relative_interior_point(const FinCone& C) {
    if (C.count() == 0) return Vec::Zero(C.dim());
    return C.generators().rowwise().sum();
}

bool polyhedron_subset(const Polyhedron& P, const Polyhedron& Q, double tol) {
    if (P.is_empty()) return true;
    for (int i = 0; i < Q.rows(); ++i) {
        LPResult lp = solve_lp(-Q.A().row(i).transpose(), P.A(), P.b(),
                               empty_matrix(P.dim()), empty_vector());
        if (lp.status == LPStatus::Unbounded) return false;
        if (lp.status == LPStatus::Optimal && -lp.objective > Q.b()(i) + tol) return false;
    }
    return true;
}

bool is_conic(const SetValue& S, double tol) {
    for (const auto& p : S.pieces())
        if (p.rows() > 0 && p.b().lpNorm<Eigen::Infinity>() > tol) return false;
    return true;
}

}  // namespace essint
