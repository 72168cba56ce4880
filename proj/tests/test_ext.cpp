#include "dercat/errors.hpp"
#include "dercat/ext.hpp"
#include "dercat/numerics.hpp"
#include "dercat/sampling.hpp"

#include "support/oracle.hpp"

#include <doctest.h>

using namespace dercat;

namespace {

LineBundleComplex O(int n, int d, int degree = 0) { return LineBundleComplex::line_bundle(n, d, degree); }

ExtTable table(const std::map<int, long>& m) {
    std::map<int, std::size_t> out;
    for (const auto& [k, v] : m) out[k] = static_cast<std::size_t>(v);
    return ExtTable(out);
}

LineBundleComplex point(int n, int k) { return koszul_point(n, coordinate_point_forms(n, k)).complex(); }

}  // namespace

TEST_CASE("ExtTable basics") {
    const ExtTable t({{0, 1}, {1, 0}, {2, 3}});
    CHECK(t.entries().size() == 2);
    CHECK(t[1] == 0);
    CHECK(t.to_string() == "{0: 1, 2: 3}");
    CHECK(t.shifted(1) == ExtTable({{-1, 1}, {1, 3}}));
    CHECK(t.euler_characteristic() == 4);
    CHECK(ExtTable().to_string() == "{}");
}

TEST_CASE("Ext between line bundles") {
    CHECK(ext_table(O(2, 0), O(2, 0)) == ExtTable({{0, 1}}));
    for (int p = 0; p <= 2; ++p) {
        for (int q = 0; q <= 2; ++q) {
            const ExtTable e = ext_table(O(2, -p), O(2, -q));
            if (p < q) {
                CHECK(e.is_zero());
            } else {
                CHECK(e == ExtTable({{0, static_cast<std::size_t>(oracle::monomials(3, p - q).size())}}));
            }
        }
    }
    CHECK(ext_table(O(2, -2), O(2, 0)) == ExtTable({{0, 6}}));
    CHECK_THROWS_AS(ext_table(O(1, 0), O(2, 0)), ValidationError);
}

TEST_CASE("Ext agrees with the reference Hom complex on random window pairs") {
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 2;
        const LineBundleComplex a = random_complex(n, rng);
        const LineBundleComplex b = random_complex(n, rng);
        CHECK(ext_table_in_window(a, b) == table(oracle::hom_cohomology(a, b)));
    }
}

TEST_CASE("Ext outside the window agrees with the tensor-Hom route") {
    // Ext^k(A, B) = H^k(A^dual (x) B)
    Rng rng(42);
    RandomComplexOptions opts;
    opts.min_twist = -3;
    opts.max_twist = 2;
    opts.min_degree = 0;
    opts.max_degree = 1;
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + trial % 2;
        const LineBundleComplex a = random_complex(n, rng, opts);
        const LineBundleComplex b = random_complex(n, rng, opts);
        CHECK(ext_table(a, b) == sheaf_cohomology(tensor(dual(a), b)));
    }
}

TEST_CASE("sheaf cohomology examples") {
    CHECK(sheaf_cohomology(O(2, 0)) == ExtTable({{0, 1}}));
    CHECK(sheaf_cohomology(O(2, -3)) == ExtTable({{2, 1}}));
    CHECK(sheaf_cohomology(O(1, 2)) == ExtTable({{0, 3}}));
}

TEST_CASE("Serre functor") {
    const LineBundleComplex s = serre_functor(O(2, 0));
    CHECK(s.term(-2) == FreeTerm{-3});
    Rng rng(43);
    const LineBundleComplex c = random_complex(2, rng);
    CHECK(serre_functor(serre_functor(c)) == shift(twist(c, -6), 4));
    const LineBundleComplex x = point(2, 0);
    CHECK(chern_character(twist(x, -3)) == chern_character(x));
}

TEST_CASE("Serre duality checks") {
    const SerreDualityReport r = serre_duality_check(O(2, 0), O(2, -3));
    CHECK(r.holds);
    CHECK(r.ext_ab == ExtTable({{2, 1}}));
    CHECK(r.ext_b_sa == ExtTable({{-2, 1}}));
    const LineBundleComplex x = point(2, 1);
    const SerreDualityReport rx = serre_duality_check(x, x);
    CHECK(rx.holds);
    CHECK(rx.ext_ab == ExtTable({{0, 1}, {1, 2}, {2, 1}}));

    Rng rng(44);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 2;
        CHECK(serre_duality_check(random_complex(n, rng), random_complex(n, rng)).holds);
    }
}

TEST_CASE("Koszul skyscrapers") {
    SUBCASE("P^1") {
        const LineBundleComplex x = koszul_point(1, {HomogPoly::variable(2, 1)}).complex();
        CHECK(x.term(-1) == FreeTerm{-1});
        CHECK(x.term(0) == FreeTerm{0});
        CHECK(sheaf_cohomology(x) == ExtTable({{0, 1}}));
    }
    SUBCASE("P^2 self-Ext is the exterior algebra") {
        const LineBundleComplex x = koszul_point(2, {HomogPoly::variable(3, 1), HomogPoly::variable(3, 2)}).complex();
        CHECK(x.term(-2) == FreeTerm{-2});
        CHECK(x.term(-1) == FreeTerm{-1, -1});
        CHECK(x.term(0) == FreeTerm{0});
        CHECK(ext_table(x, x) == table(oracle::hom_cohomology(x, x)));
        CHECK(ext_table(x, x) == ExtTable({{0, 1}, {1, 2}, {2, 1}}));
        CHECK(sheaf_cohomology(x) == ExtTable({{0, 1}}));
        CHECK(chern_character(x)[0].is_zero());
    }
    SUBCASE("self-Ext is binomial and supported in [0, n]") {
        for (int n = 1; n <= 3; ++n) {
            const LineBundleComplex x = point(n, n);
            std::map<int, long> expected;
            for (int k = 0; k <= n; ++k) expected[k] = oracle::choose(n, k);
            CHECK(ext_table(x, x) == table(expected));
        }
    }
    SUBCASE("distinct points are orthogonal") {
        CHECK(ext_table(point(2, 0), point(2, 1)).is_zero());
        Rng rng(45);
        const auto sample = default_point_sample(2, 2, 9);
        const LineBundleComplex a = koszul_point(2, sample[3]).complex();
        const LineBundleComplex b = koszul_point(2, sample[4]).complex();
        const ExtTable self = ext_table(a, a);
        CHECK(self == ExtTable({{0, 1}, {1, 2}, {2, 1}}));
        if (!(sample[3] == sample[4])) CHECK(ext_table(a, b).is_zero());
    }
    SUBCASE("rejects bad forms") {
        CHECK_THROWS_AS(koszul_point(2, {HomogPoly::variable(3, 1)}), ValidationError);
        CHECK_THROWS_AS(koszul_point(2, {HomogPoly::variable(3, 1), HomogPoly::parse("2*x1", 3)}), ValidationError);
        CHECK_THROWS_AS(koszul_point(1, {HomogPoly::parse("x0^2", 2)}), ValidationError);
    }
    SUBCASE("point forms cut out the point") {
        const std::vector<Scalar> pt{Scalar(1), Scalar(-2), Scalar(3)};
        const auto forms = point_forms(2, pt);
        REQUIRE(forms.size() == 2);
        for (const auto& f : forms) CHECK(f.evaluate(pt).is_zero());
    }
}

TEST_CASE("point-object predicates") {
    SUBCASE("skyscraper") {
        const PointCandidateReport r = point_object_check(point(2, 0));
        CHECK(r.serre_fixed == Verdict::yes);
        CHECK(r.mode == "exact");
        CHECK(r.simple);
        CHECK(r.no_negative_self_ext);
    }
    SUBCASE("structure sheaf") {
        const PointCandidateReport r = point_object_check(O(2, 0));
        CHECK(r.serre_fixed == Verdict::no);
        CHECK(r.simple);
        CHECK(r.no_negative_self_ext);
    }
    SUBCASE("shifts do not change the flags") {
        const PointCandidateReport base = point_object_check(point(2, 2));
        for (int k : {-2, 1, 3}) {
            const PointCandidateReport r = point_object_check(shift(point(2, 2), k));
            CHECK(r.serre_fixed == base.serre_fixed);
            CHECK(r.simple == base.simple);
            CHECK(r.no_negative_self_ext == base.no_negative_self_ext);
        }
    }
    SUBCASE("sum of two points is not simple") {
        const PointCandidateReport r = point_object_check(direct_sum(point(1, 0), point(1, 1)));
        CHECK_FALSE(r.simple);
        CHECK(r.serre_fixed == Verdict::yes);
    }
    SUBCASE("reports are reproducible") {
        const auto c = direct_sum(point(1, 0), O(1, 0));
        const PointCandidateReport a = point_object_check(c, {{}, 8, 3});
        const PointCandidateReport b = point_object_check(c, {{}, 8, 3});
        CHECK(a.serre_fixed == b.serre_fixed);
        CHECK(a.candidates_tried == b.candidates_tried);
        CHECK(a.self_ext == b.self_ext);
    }
}

TEST_CASE("line-bundle-object predicate") {
    std::vector<std::vector<HomogPoly>> coords;
    for (int k = 0; k <= 2; ++k) coords.push_back(coordinate_point_forms(2, k));
    SUBCASE("O(5)") {
        const LineBundleCheckReport r = line_bundle_object_check(O(2, 5), coords);
        CHECK(r.pass);
        REQUIRE(r.common_degree.has_value());
        CHECK(*r.common_degree == 0);
    }
    SUBCASE("O + O") {
        const LineBundleCheckReport r = line_bundle_object_check(direct_sum(O(2, 0), O(2, 0)), coords);
        CHECK_FALSE(r.pass);
        CHECK(r.samples[0].ext == ExtTable({{0, 2}}));
    }
    SUBCASE("shifted structure sheaf") {
        const LineBundleCheckReport r = line_bundle_object_check(O(2, 0, 7), coords);
        CHECK(r.pass);
        REQUIRE(r.common_degree.has_value());
        CHECK(*r.common_degree == -7);
    }
    SUBCASE("default sample includes random points") {
        const auto sample = default_point_sample(2, 3, 1);
        CHECK(sample.size() == 6);
        CHECK(line_bundle_object_check(O(2, -4), sample).pass);
        CHECK_FALSE(line_bundle_object_check(point(2, 0), sample).pass);
    }
}

TEST_CASE("Ext properties on random window complexes") {
    Rng rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 2;
        const LineBundleComplex x = random_complex(n, rng);
        const LineBundleComplex a = random_complex(n, rng);
        const LineBundleComplex b = random_complex(n, rng);
        const int k = trial % 5 - 2;
        CAPTURE(trial);
        // shift compatibility
        CHECK(ext_table(x, shift(b, k)) == ext_table(x, b).shifted(k));
        // additivity
        CHECK(ext_table(x, direct_sum(a, b)) == ext_table(x, a) + ext_table(x, b));
        // Euler characteristic is additive on cones
        const ChainMap f = random_chain_map(a, b, rng);
        CHECK(ext_table(x, cone(f)).euler_characteristic() ==
              ext_table(x, b).euler_characteristic() - ext_table(x, a).euler_characteristic());
        // homotopy invariance
        CHECK(ext_table_in_window(x, prune(b)) == ext_table_in_window(x, b));
        CHECK(ext_table_in_window(prune(a), b) == ext_table_in_window(a, b));
        // coarse support bound
        const ExtTable e = ext_table(a, b);
        if (!e.is_zero()) {
            CHECK(*e.min_degree() >= b.support()->first - a.support()->second - n);
            CHECK(*e.max_degree() <= b.support()->second - a.support()->first + n);
        }
    }
}

TEST_CASE("single sheaves have Ext in [0, n]") {
    for (int n = 1; n <= 2; ++n) {
        for (int p = -4; p <= 4; ++p) {
            for (int q = -4; q <= 4; ++q) {
                const ExtTable e = ext_table(O(n, p), O(n, q));
                if (e.is_zero()) continue;
                CHECK(*e.min_degree() >= 0);
                CHECK(*e.max_degree() <= n);
            }
        }
    }
}

TEST_CASE("pluricanonical dimensions vanish for positive powers on P^n") {
    const auto dims = pluricanonical_dimensions(2, -2, 2);
    CHECK(dims.at(0) == 1);
    CHECK(dims.at(1) == 0);
    CHECK(dims.at(2) == 0);
    CHECK(dims.at(-1) == 10);  // h^0(O(3))
    CHECK(dims.at(-2) == static_cast<std::size_t>(oracle::choose(8, 2)));
}
