#include <doctest.h>

#include <cmath>

#include "cycap/channel.hpp"
#include "cycap/errors.hpp"
#include "cycap/gap.hpp"
#include "cycap/ineq.hpp"
#include "cycap/outer.hpp"
#include "cycap/polytope.hpp"

using namespace cycap;

namespace {

ChannelRatios ratios(std::vector<double> snr, std::vector<double> inr) {
    ChannelRatios r;
    r.users = static_cast<int>(snr.size());
    r.snr = std::move(snr);
    r.inr = std::move(inr);
    return r;
}

}  // namespace

TEST_CASE("worked outer parameters: symmetric K=3, SNR=100, INR=10") {
    OuterParams p = outer_parameters(ratios({100, 100, 100}, {10, 10, 10}));
    CHECK(p.lambda[0] == doctest::Approx(6.658211482751795).epsilon(1e-12));
    CHECK(p.mu[0] == doctest::Approx(3.4594316186372973).epsilon(1e-12));
    CHECK(p.beta[0] == doctest::Approx(3.1987798641144973).epsilon(1e-12));
    CHECK(p.gamma[0] == doctest::Approx(6.794415866350106).epsilon(1e-12));
    CHECK(p.alpha[0] == doctest::Approx(4.328470940754134).epsilon(1e-12));
    CHECK(p.rho[0] == doctest::Approx(14.321666671218738).epsilon(1e-12));
}

TEST_CASE("beta equals lambda minus mu bitwise") {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        int users = rng.uniform_int(2, 6);
        std::vector<double> snr(users), inr(users);
        for (int i = 0; i < users; ++i) {
            snr[i] = db_to_linear(rng.uniform(-20, 45));
            inr[i] = db_to_linear(rng.uniform(-20, 45));
        }
        OuterParams p = outer_parameters(ratios(snr, inr));
        for (int i = 0; i < users; ++i) {
            CHECK(p.beta[i] == p.lambda[i] - p.mu[i]);
        }
    }
}

TEST_CASE("zero interference collapses the outer parameters") {
    OuterParams p = outer_parameters(ratios({100, 30}, {0, 0}));
    for (int i = 0; i < 2; ++i) {
        double cap = std::log2(1.0 + (i == 0 ? 100.0 : 30.0));
        CHECK(p.alpha[i] == cap);
        CHECK(p.gamma[i] == cap);
        CHECK(p.lambda[i] == cap);
        CHECK(p.beta[i] == cap);
        CHECK(p.mu[i] == 0.0);
    }
}

TEST_CASE("degenerate inputs push beta negative and get flagged") {
    OuterParams p = outer_parameters(ratios({0, 0}, {3, 3}));
    CHECK(p.beta[0] < 0.0);
    ConstraintSet cs = outer_constraints(p, Regime::Strong);
    bool flagged = false;
    for (const auto& n : cs.notes) {
        if (n.find("degenerate") != std::string::npos) flagged = true;
    }
    CHECK(flagged);

    // the negative beta branch enters sum rows unclamped
    const auto& sum = cs.rows[2];
    REQUIRE(sum.kind.family == ConstraintFamily::TotalSum);
    CHECK(sum.branches[1].value == p.beta[1] + p.gamma[0]);
}

TEST_CASE("outer constraint structure at K=2 and counts up to K=8") {
    auto r2 = ratios({100, 40}, {9, 5});
    ConstraintSet cs2 = outer_constraints(outer_parameters(r2), Regime::Weak);
    REQUIRE(cs2.rows.size() == 5);
    CHECK(cs2.rows[0].branch_label() == "lambda_1");
    // sum constraint carries the alpha-sum branch plus the two rho branches
    const auto& sum = cs2.rows[2];
    CHECK(sum.kind.family == ConstraintFamily::TotalSum);
    REQUIRE(sum.branches.size() == 3);
    CHECK(sum.branches[0].label == "alpha_1+alpha_2");
    CHECK(sum.branches[1].label == "beta_2+gamma_1");
    CHECK(sum.branches[2].label == "beta_1+gamma_2");

    Rng rng(29);
    for (int users = 2; users <= 8; ++users) {
        std::vector<double> snr(users), inr(users);
        for (int i = 0; i < users; ++i) {
            snr[i] = db_to_linear(rng.uniform(0, 40));
            inr[i] = db_to_linear(rng.uniform(0, 20));
        }
        ConstraintSet cs = outer_constraints(outer_parameters(ratios(snr, inr)), Regime::Weak);
        CHECK(cs.rows.size() == static_cast<std::size_t>(users * users + 1));
    }
}

TEST_CASE("outer sets outside the weak regime carry an annotation") {
    auto r = ratios({100, 10}, {10, 100});
    ConstraintSet cs = outer_constraints(outer_parameters(r), classify_regime(r));
    REQUIRE(!cs.notes.empty());
    CHECK(cs.notes[0].find("mixed") != std::string::npos);
}

TEST_CASE("strong capacity emits box and pair rows") {
    auto r = ratios({10, 10, 10}, {100, 100, 100});
    ConstraintSet cs = strong_capacity(r);
    REQUIRE(cs.rows.size() == 6);
    for (int i = 0; i < 3; ++i) {
        CHECK(cs.rows[i].rhs == doctest::Approx(std::log2(11.0)).epsilon(1e-12));
        CHECK(cs.rows[3 + i].rhs == doctest::Approx(std::log2(111.0)).epsilon(1e-12));
        CHECK(cs.rows[3 + i].kind.family == ConstraintFamily::AdjacentSum);
        CHECK(cs.rows[3 + i].kind.length == 2);
    }
}

TEST_CASE("very strong channels reduce to the box") {
    auto r = ratios({10, 10, 10}, {200, 200, 200});  // 200 >= 11*10
    ConstraintSet cs = strong_capacity(r);
    REQUIRE(cs.rows.size() == 3);
    for (const auto& row : cs.rows) {
        CHECK(row.kind.family == ConstraintFamily::Individual);
        CHECK(row.rhs == doctest::Approx(std::log2(11.0)).epsilon(1e-12));
    }
    REQUIRE(!cs.notes.empty());
    CHECK(cs.notes[0].find("very_strong") != std::string::npos);
}

TEST_CASE("strong capacity on the INR == SNR boundary") {
    auto r = ratios({10, 20}, {10, 20});
    ConstraintSet cs = strong_capacity(r);  // boundary classifies strong
    CHECK(cs.rows.size() == 4);
    CHECK(cs.rows[2].rhs == doctest::Approx(std::log2(1.0 + 10.0 + 20.0)).epsilon(1e-12));
}

TEST_CASE("strong capacity refuses non-strong channels naming the violator") {
    auto r = ratios({100, 10}, {10, 100});
    try {
        strong_capacity(r);
        FAIL("expected RegimeError");
    } catch (const RegimeError& e) {
        CHECK(e.violating_user() == 1);
    }
}

TEST_CASE("MAC intersection rows and the strong-regime reduction") {
    auto r = ratios({10, 10}, {100, 100});
    ConstraintSet mac = mac_intersection(r);
    REQUIRE(mac.rows.size() == 6);
    // rows from the spec example: R_1 <= log2(11), R_1 <= log2(101), pair sums log2(111)
    bool saw_snr_row = false, saw_inr_row = false;
    for (const auto& row : mac.rows) {
        if (row.kind == ConstraintKind{ConstraintFamily::Individual, 1, 0}) {
            if (row.branch_label() == "lambda_1") {
                CHECK(row.rhs == doctest::Approx(std::log2(11.0)).epsilon(1e-12));
                saw_snr_row = true;
            }
            if (row.branch_label() == "mu_1") {
                CHECK(row.rhs == doctest::Approx(std::log2(101.0)).epsilon(1e-12));
                saw_inr_row = true;
            }
        }
        if (row.kind.family == ConstraintFamily::AdjacentSum) {
            CHECK(row.rhs == doctest::Approx(std::log2(111.0)).epsilon(1e-12));
        }
    }
    CHECK(saw_snr_row);
    CHECK(saw_inr_row);

    // In the strong regime the redundancy-removed MAC intersection is the capacity region.
    Reduction reduced = remove_redundant(system_from_constraints(mac));
    REQUIRE(reduced.feasible());
    CHECK(set_equal(reduced.system, system_from_constraints(strong_capacity(r))).equal);
}

TEST_CASE("MAC intersection flags a zero-INR common-message bottleneck") {
    ConstraintSet mac = mac_intersection(ratios({10, 10}, {0, 5}));
    bool flagged = false;
    for (const auto& n : mac.notes) {
        if (n.find("INR_1 = 0") != std::string::npos) flagged = true;
    }
    CHECK(flagged);
}
