#include <doctest.h>

#include <cmath>

#include "cycap/channel.hpp"
#include "cycap/errors.hpp"
#include "cycap/gap.hpp"
#include "cycap/hk.hpp"
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

ChannelRatios symmetric3() { return ratios({100, 100, 100}, {10, 10, 10}); }

const LinearConstraint& find_row(const ConstraintSet& cs, const ConstraintKind& kind) {
    for (const auto& row : cs.rows) {
        if (row.kind == kind) return row;
    }
    throw std::runtime_error("kind not found: " + to_string(kind));
}

}  // namespace

TEST_CASE("etw split pins the private interference to the noise floor") {
    auto s = etw_split(ratios({100, 100}, {10, 10}));
    CHECK(s.inr_private[0] == 1.0);
    CHECK(s.snr_private[0] == doctest::Approx(10.0));

    auto weak = etw_split(ratios({100, 100}, {0.5, 0.5}));
    CHECK(weak.inr_private[0] == 0.5);
    CHECK(weak.snr_private[0] == 100.0);  // nothing withheld below the noise floor

    auto none = etw_split(ratios({50, 50}, {0, 0}));
    CHECK(none.inr_private[1] == 0.0);
    CHECK(none.snr_private[1] == 50.0);
}

TEST_CASE("splits satisfy the shared-fraction consistency invariant") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        int users = rng.uniform_int(2, 6);
        std::vector<double> snr(users), inr(users);
        for (int i = 0; i < users; ++i) {
            snr[i] = db_to_linear(rng.uniform(0, 40));
            inr[i] = db_to_linear(rng.uniform(-10, 40));
        }
        auto r = ratios(snr, inr);
        etw_split(r).validate(r);        // throws on violation
        all_private_split(r).validate(r);
    }
}

TEST_CASE("worked parameters: symmetric K=3, SNR=100, INR=10") {
    HkParams p = hk_parameters(symmetric3(), etw_split(symmetric3()));
    CHECK(p.a[0] == doctest::Approx(2.584962500721156).epsilon(1e-12));
    CHECK(p.d[0] == doctest::Approx(5.672425341971495).epsilon(1e-12));
    CHECK(p.e[0] == doctest::Approx(3.3923174227787602).epsilon(1e-12));
    CHECK(p.g[0] == doctest::Approx(5.794415866350106).epsilon(1e-12));
    CHECK(p.r[0] == doctest::Approx(11.771695789850023).epsilon(1e-12));
}

TEST_CASE("no interference collapses every parameter to the point-to-point rate") {
    auto r = ratios({100, 30, 7}, {0, 0, 0});
    HkParams p = hk_parameters(r, etw_split(r));
    for (int i = 0; i < 3; ++i) {
        double cap = std::log2(1.0 + r.snr[i]);
        CHECK(p.a[i] == cap);
        CHECK(p.d[i] == cap);
        CHECK(p.e[i] == cap);
        CHECK(p.g[i] == cap);
    }
}

TEST_CASE("ETW reduction identity: log2(2+x)-1 forms when INR >= 1") {
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        int users = rng.uniform_int(2, 5);
        std::vector<double> snr(users), inr(users);
        for (int i = 0; i < users; ++i) {
            snr[i] = db_to_linear(rng.uniform(0, 40));
            inr[i] = db_to_linear(rng.uniform(0, 40));  // >= 0 dB keeps INR >= 1
        }
        auto r = ratios(snr, inr);
        auto s = etw_split(r);
        HkParams p = hk_parameters(r, s);
        for (int i = 0; i < users; ++i) {
            int n = r.next(i);
            CHECK(p.a[i] == doctest::Approx(std::log2(2.0 + s.snr_private[i]) - 1.0).epsilon(1e-12));
            CHECK(p.d[i] == doctest::Approx(std::log2(2.0 + r.snr[i]) - 1.0).epsilon(1e-12));
            CHECK(p.e[i] ==
                  doctest::Approx(std::log2(1.0 + r.inr[n] + s.snr_private[i]) - 1.0).epsilon(1e-12));
            CHECK(p.g[i] ==
                  doctest::Approx(std::log2(1.0 + r.inr[n] + r.snr[i]) - 1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("parameter ordering holds for random channels and splits") {
    Rng rng(23);
    for (int t = 0; t < 60; ++t) {
        int users = rng.uniform_int(2, 7);
        std::vector<double> snr(users), inr(users);
        for (int i = 0; i < users; ++i) {
            snr[i] = db_to_linear(rng.uniform(-20, 45));
            inr[i] = db_to_linear(rng.uniform(-20, 45));
        }
        auto r = ratios(snr, inr);
        for (const auto& s : {etw_split(r), all_private_split(r)}) {
            HkParams p = hk_parameters(r, s);
            for (int i = 0; i < users; ++i) {
                CHECK(p.a[i] <= p.d[i]);
                CHECK(p.d[i] <= p.g[i]);
                CHECK(p.a[i] <= p.e[i]);
                CHECK(p.e[i] <= p.g[i]);
                CHECK(p.a[i] >= 0.0);
            }
        }
    }
}

TEST_CASE("K=2 constraints match the two-user reduction, branches included") {
    auto r = ratios({100, 40}, {9, 5});
    HkParams p = hk_parameters(r, etw_split(r));
    ConstraintSet cs = achievable_constraints(p, Regime::Weak);
    REQUIRE(cs.rows.size() == 5);

    const auto& r1 = find_row(cs, {ConstraintFamily::Individual, 1, 0});
    REQUIRE(r1.branches.size() == 2);
    CHECK(r1.branches[0].label == "d_1");
    CHECK(r1.branches[1].label == "a_1+e_2");
    CHECK(r1.rhs == std::min(p.d[0], p.a[0] + p.e[1]));

    const auto& r2 = find_row(cs, {ConstraintFamily::Individual, 2, 0});
    CHECK(r2.branches[1].label == "a_2+e_1");

    const auto& sum = find_row(cs, {ConstraintFamily::TotalSum, 0, 0});
    REQUIRE(sum.branches.size() == 3);
    CHECK(sum.branches[0].label == "e_1+e_2");
    CHECK(sum.branches[1].label == "a_2+g_1");
    CHECK(sum.branches[2].label == "a_1+g_2");
    CHECK(sum.rhs == std::min({p.e[0] + p.e[1], p.a[1] + p.g[0], p.a[0] + p.g[1]}));

    const auto& plus1 = find_row(cs, {ConstraintFamily::TotalSumPlus, 1, 0});
    CHECK(plus1.coeffs == std::vector<int>{2, 1});
    CHECK(plus1.branches[0].label == "a_1+g_1+e_2");
    CHECK(plus1.rhs == p.a[0] + p.g[0] + p.e[1]);

    const auto& plus2 = find_row(cs, {ConstraintFamily::TotalSumPlus, 2, 0});
    CHECK(plus2.coeffs == std::vector<int>{1, 2});
    CHECK(plus2.branches[0].label == "a_2+g_2+e_1");
}

TEST_CASE("constraint count is K^2+1 for K = 2..8") {
    Rng rng(3);
    for (int users = 2; users <= 8; ++users) {
        std::vector<double> snr(users), inr(users);
        for (int i = 0; i < users; ++i) {
            snr[i] = db_to_linear(rng.uniform(0, 40));
            inr[i] = db_to_linear(rng.uniform(0, 20));
        }
        auto r = ratios(snr, inr);
        ConstraintSet cs = achievable_constraints(hk_parameters(r, etw_split(r)), Regime::Weak);
        CHECK(cs.rows.size() == static_cast<std::size_t>(users * users + 1));
    }
}

TEST_CASE("fully symmetric channels give rhs values depending only on kind and length") {
    ConstraintSet cs =
        achievable_constraints(hk_parameters(symmetric3(), etw_split(symmetric3())), Regime::Weak);
    for (const auto& row : cs.rows) {
        for (const auto& other : cs.rows) {
            if (row.kind.family == other.kind.family && row.kind.length == other.kind.length) {
                CHECK(row.rhs == other.rhs);
            }
        }
    }
}

TEST_CASE("raising one SNR with the split fraction fixed never shrinks the region") {
    Rng rng(31);
    for (int t = 0; t < 25; ++t) {
        int users = rng.uniform_int(2, 5);
        std::vector<double> snr(users), inr(users);
        for (int i = 0; i < users; ++i) {
            snr[i] = db_to_linear(rng.uniform(0, 35));
            inr[i] = db_to_linear(rng.uniform(-10, 35));
        }
        auto r = ratios(snr, inr);
        ConstraintSet before = achievable_constraints(hk_parameters(r, etw_split(r)), Regime::Weak);

        int bump = rng.uniform_int(0, users - 1);
        auto grown = r;
        grown.snr[bump] *= 1.0 + db_to_linear(rng.uniform(-10, 10));
        // ETW depends on INR only, so the split fraction is unchanged.
        ConstraintSet after =
            achievable_constraints(hk_parameters(grown, etw_split(grown)), Regime::Weak);

        REQUIRE(after.rows.size() == before.rows.size());
        for (std::size_t k = 0; k < before.rows.size(); ++k) {
            REQUIRE(after.rows[k].kind == before.rows[k].kind);
            CHECK(after.rows[k].rhs >= before.rows[k].rhs - 1e-12);
        }
    }
}

TEST_CASE("rate-split system has 8K rows over 3K variables") {
    auto r = ratios({100, 40}, {9, 5});
    HkParamsExact x = to_exact(hk_parameters(r, etw_split(r)));
    InequalitySystem pre = pre_elimination_system(x);
    CHECK(pre.dimension() == 6);
    CHECK(pre.size() == 16);

    auto r3 = symmetric3();
    InequalitySystem pre3 = pre_elimination_system(to_exact(hk_parameters(r3, etw_split(r3))));
    CHECK(pre3.dimension() == 9);
    CHECK(pre3.size() == 24);
}

TEST_CASE("achievable region rejects K < 2") {
    HkParams p;
    p.users = 1;
    p.a = p.d = p.e = p.g = p.r = {1.0};
    CHECK_THROWS_AS(achievable_constraints(p, Regime::Weak), ValidationError);
}

TEST_CASE("all-private split: the projection still matches the closed form") {
    // With everything private, a=d and e=g per user; the elimination must
    // still land exactly on the region description.
    auto r = ratios({100, 40}, {9, 5});
    HkParams p = hk_parameters(r, all_private_split(r));
    for (int i = 0; i < 2; ++i) {
        CHECK(p.a[i] == p.d[i]);
        CHECK(p.e[i] == p.g[i]);
    }
    HkParamsExact exact = to_exact(p);
    Reduction projected =
        fourier_motzkin_eliminate(pre_elimination_system(exact), {"S_1", "S_2", "T_1", "T_2"});
    REQUIRE(projected.feasible());
    CHECK(set_equal(projected.system, closed_form_system(exact)).equal);
}

TEST_CASE("zero interference collapses the polytope to the box") {
    auto r = ratios({100, 30, 7}, {0, 0, 0});
    HkParams p = hk_parameters(r, etw_split(r));
    InequalitySystem region = closed_form_system(to_exact(p));

    InequalitySystem box(region.variables());
    for (int i = 0; i < 3; ++i) {
        std::vector<Rat> up(3, Rat(0)), dn(3, Rat(0));
        up[i] = 1;
        dn[i] = -1;
        box.add_row(up, dyadic(std::log2(1.0 + r.snr[i])));
        box.add_row(dn, Rat(0));
    }
    CHECK(set_equal(region, box).equal);
}
