#include "catch_amalgamated.hpp"

#include "properties.hpp"

using namespace testing;

namespace {

void require_clean(const Report& r, size_t min_cases) {
    INFO((r.messages.empty() ? std::string() : r.messages.front()));
    CHECK(r.failures == 0);
    CHECK(r.cases >= min_cases);
}

long lattice_length_oracle(const std::vector<std::pair<long, long>>& pts) {
    long best = 0;
    for (auto& a : pts)
        for (auto& b : pts) best = std::max(best, std::gcd(std::labs(a.first - b.first), std::labs(a.second - b.second)));
    return best;
}

}  // namespace

TEST_CASE("budget monotonicity", "[properties]") { require_clean(budget_monotonicity(11, 60), 60); }

TEST_CASE("proved relations hold under valuations", "[properties]") { require_clean(proved_implies_true(12, 40), 40); }

TEST_CASE("pos and hull idempotent on random presentations", "[properties]") {
    require_clean(functor_idempotency(13, 40), 40);
}

TEST_CASE("tensor unit and commutativity", "[properties]") { require_clean(tensor_laws(14, 30), 60); }

TEST_CASE("ground semiring axioms", "[properties]") { require_clean(ground_axioms(15, 300), 300); }

TEST_CASE("point test agrees with valuation test", "[properties]") { require_clean(trop_matches_valuation(16, 150), 150); }

TEST_CASE("normal forms are idempotent", "[properties]") {
    Gen g(17);
    Report r;
    for (int i = 0; i < 60; ++i) {
        auto p = pres(GroundKind::F1, {"x", "y"}, {},
                      {{g.monomial(GroundKind::F1, {"x", "y"}, 3), g.monomial(GroundKind::F1, {"x", "y"}, 3)}});
        try {
            auto m = normalize_monomial(p, parse_monomial(p, g.monomial(GroundKind::F1, {"x", "y"}, 4)));
            r.check(normalize_monomial(p, m) == m, "normal form moved: " + m.str());
        } catch (const Error& e) {
            r.check(e.code() == "CompletionBudgetExceeded", e.code());
        }
    }
    require_clean(r, 60);
}

TEST_CASE("random plane curves are balanced with lattice-length weights", "[properties]") {
    Gen g(18);
    Report r;
    auto R = pres(GroundKind::RAT, {"x", "y"});
    for (int i = 0; i < 40; ++i) {
        std::map<std::pair<long, long>, std::string> terms;
        int n = g.pick(2, 5);
        while (static_cast<int>(terms.size()) < n)
            terms[{g.pick(0, 3), g.pick(0, 3)}] = g.choose<std::string>({"1", "-1", "2", "1/2", "4"});
        std::string f;
        for (auto& [e, c] : terms) {
            f += (f.empty() ? "" : " + ") + c;
            if (e.first) f += "*x^" + std::to_string(e.first);
            if (e.second) f += "*y^" + std::to_string(e.second);
        }
        auto v = i % 2 ? padic_into(R, 2) : trivial_into(R, GroundKind::TROP);
        PolyhedralComplex c;
        try {
            c = tropical_hypersurface(R, parse_sum(R, f), v);
        } catch (const Error& e) {
            r.check(false, f + ": " + e.what());
            continue;
        }
        r.check(balancing_defects(c).empty(), "unbalanced: " + f);
        // Weight oracle: evaluate every term at an interior point of the cell and measure the tie.
        for (auto& cell : c.cells) {
            std::vector<Q> u(2, Q(0));
            for (int vi : cell.vertices)
                for (int k = 0; k < 2; ++k) u[k] += c.vertices[vi][k] / Q(static_cast<long>(cell.vertices.size()));
            if (!cell.rays.empty())
                for (int k = 0; k < 2; ++k) u[k] += Q(c.rays[cell.rays[0]][k]);
            std::vector<std::pair<std::pair<long, long>, Q>> vals;
            Q best;
            bool first = true;
            for (auto& [e, coeff] : terms) {
                Q lam = v.kind == BaseValuation::Kind::p_adic ? Q(-padic_order(Q(coeff), 2)) : Q(0);
                Q s = lam + u[0] * e.first + u[1] * e.second;
                vals.push_back({e, s});
                if (first || s > best) best = s;
                first = false;
            }
            std::vector<std::pair<long, long>> tie;
            for (auto& [e, s] : vals)
                if (s == best) tie.push_back(e);
            r.check(tie.size() >= 2 && lattice_length_oracle(tie) == cell.weight, "weight mismatch on " + f);
        }
    }
    require_clean(r, 40);
}

TEST_CASE("weights are constant along rays", "[properties]") {
    Report r;
    for (auto [p, w] : {std::pair{line(), 1}, std::pair{conic(), 2}}) {
        auto bp = bend(p, trivial_into(p, GroundKind::TROP), tag(GroundKind::TROP));
        for (const char* t : {"2", "4", "8"})
            r.check(mr_weight(bp, point(GroundKind::TROP, {{"x", t}, {"y", t}}), 2) == w, "diagonal ray");
        for (const char* t : {"1/2", "1/4", "1/8"}) {
            r.check(mr_weight(bp, point(GroundKind::TROP, {{"x", "1"}, {"y", t}}), 2) == w, "vertical ray");
            r.check(mr_weight(bp, point(GroundKind::TROP, {{"x", t}, {"y", "1"}}), 2) == w, "horizontal ray");
        }
    }
    require_clean(r, 18);
}

TEST_CASE("span table laws", "[properties]") {
    Budget b;
    b.max_degree = 2;
    auto an = macpherson_an(pres(GroundKind::F1, {"x", "y"}), KDesignation{}, 3, b);
    Report r;
    const int S = static_cast<int>(an.spans.size());
    for (int i = 0; i < S; ++i) {
        r.check(an.join[i][i] == i, "join not idempotent");
        for (int j = 0; j < S; ++j) {
            r.check(an.join[i][j] == an.join[j][i], "join not commutative");
            r.check(an.product[i][j] == an.product[j][i], "product not commutative");
            for (int k = 0; k < S; k += 3) {
                int ij = an.join[i][j], jk = an.join[j][k];
                if (ij >= 0 && jk >= 0 && an.join[ij][k] >= 0)
                    r.check(an.join[ij][k] == an.join[i][jk], "join not associative");
                int p = jk >= 0 ? an.product[i][jk] : -1;
                int pij = an.product[i][j], pik = an.product[i][k];
                if (p >= 0 && pij >= 0 && pik >= 0 && an.join[pij][pik] >= 0)
                    r.check(p == an.join[pij][pik], "product does not distribute");
            }
        }
    }
    require_clean(r, 100);
}
