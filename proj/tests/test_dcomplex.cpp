#include "dercat/complex.hpp"
#include "dercat/errors.hpp"
#include "dercat/ext.hpp"
#include "dercat/numerics.hpp"
#include "dercat/sampling.hpp"

#include "support/oracle.hpp"

#include <doctest.h>

using namespace dercat;

namespace {

HomogPoly P(const char* text, int nvars) { return HomogPoly::parse(text, nvars); }

PolyMatrix single(const HomogPoly& p) {
    PolyMatrix m(p.num_variables(), 1, 1);
    m(0, 0) = p;
    return m;
}

// [O(-1) --x0--> O] in degrees -1, 0 on P^1
LineBundleComplex x0_map() {
    return LineBundleComplex(1, {{-1, {-1}}, {0, {0}}}, {{-1, single(P("x0", 2))}});
}

}  // namespace

TEST_CASE("validate accepts complexes and reports the first violation") {
    CHECK(validate(LineBundleComplex::line_bundle(1, 0)).ok);
    CHECK(validate(x0_map()).ok);

    const LineBundleComplex bad(1, {{-2, {-2}}, {-1, {-1}}, {0, {0}}},
                                {{-2, single(P("x0", 2))}, {-1, single(P("x0", 2))}});
    const ValidationReport r = validate(bad);
    CHECK_FALSE(r.ok);
    REQUIRE(r.degree.has_value());
    CHECK(*r.degree == -2);
    CHECK_THROWS_AS(require_valid(bad), ValidationError);

    SUBCASE("wrong entry degree") {
        const LineBundleComplex c(1, {{0, {0}}, {1, {2}}}, {{0, single(P("x0", 2))}});
        const ValidationReport rr = validate(c);
        CHECK_FALSE(rr.ok);
        REQUIRE(rr.entry.has_value());
        CHECK(*rr.entry == std::pair<std::size_t, std::size_t>{0, 0});
    }
    SUBCASE("wrong shape") {
        PolyMatrix m(2, 2, 1);
        m(0, 0) = P("x0", 2);
        m(1, 0) = P("x1", 2);
        const LineBundleComplex c(1, {{0, {0}}, {1, {1}}}, {{0, m}});
        CHECK_FALSE(validate(c).ok);
    }
}

TEST_CASE("shift") {
    Rng rng(3);
    const LineBundleComplex c = random_complex(2, rng);
    CHECK(shift(c, 0) == c);
    CHECK(shift(shift(c, 1), -1) == c);
    const LineBundleComplex s = shift(LineBundleComplex::line_bundle(2, 0), 2);
    CHECK(s.term(-2) == FreeTerm{0});
    CHECK(s.term(0).empty());
    const LineBundleComplex sx = shift(x0_map(), 1);
    CHECK(sx.differential(-2)(0, 0) == P("-x0", 2));
}

TEST_CASE("cone") {
    SUBCASE("zero map gives shift(A, 1) + B") {
        Rng rng(8);
        const LineBundleComplex a = random_complex(1, rng);
        const LineBundleComplex b = random_complex(1, rng);
        const LineBundleComplex c = cone(ChainMap::zero(a, b));
        const LineBundleComplex expected = direct_sum(shift(a, 1), b);
        CHECK(c == expected);
    }
    SUBCASE("identity on O") {
        const LineBundleComplex c = cone(ChainMap::identity(LineBundleComplex::line_bundle(2, 0)));
        CHECK(validate(c).ok);
        CHECK(c.term(-1) == FreeTerm{0});
        CHECK(c.term(0) == FreeTerm{0});
        CHECK(c.differential(-1)(0, 0) == HomogPoly::constant(3, Scalar(1)));
        CHECK(is_zero_object(WindowComplex(c)));
    }
    SUBCASE("x0 on P^1 has rank-zero class") {
        const ChainMap f(LineBundleComplex::line_bundle(1, -1), LineBundleComplex::line_bundle(1, 0),
                         {{0, single(P("x0", 2))}});
        const ChernPolynomial ch = chern_character(cone(f));
        CHECK(ch[0].is_zero());
        CHECK(ch[1] == Scalar(1));
    }
    SUBCASE("rejects non-chain maps") {
        const LineBundleComplex a = x0_map();
        const ChainMap f(a, a, {{0, single(HomogPoly::constant(2, Scalar(1)))}});
        CHECK_THROWS_AS(cone(f), ValidationError);
    }
}

TEST_CASE("direct sum") {
    Rng rng(9);
    const LineBundleComplex a = random_complex(2, rng);
    CHECK(direct_sum(a, LineBundleComplex(2)) == a);
    const LineBundleComplex s =
        direct_sum(LineBundleComplex::line_bundle(2, 0), LineBundleComplex::line_bundle(2, -1));
    CHECK(s.term(0) == FreeTerm{0, -1});
    CHECK_THROWS_AS(direct_sum(a, LineBundleComplex::line_bundle(1, 0)), ValidationError);
}

TEST_CASE("tensor") {
    Rng rng(10);
    const LineBundleComplex a = random_complex(2, rng);
    CHECK(tensor(a, LineBundleComplex::line_bundle(2, 0)) == a);
    CHECK(tensor(LineBundleComplex::line_bundle(2, 2), LineBundleComplex::line_bundle(2, -3)) ==
          LineBundleComplex::line_bundle(2, -1));
    for (int trial = 0; trial < 10; ++trial) {
        const LineBundleComplex x = random_complex(2, rng);
        const LineBundleComplex y = random_complex(2, rng);
        const LineBundleComplex t = tensor(x, y);
        CHECK(validate(t).ok);
        CHECK(chern_character(t) == chern_character(x) * chern_character(y));
    }
}

TEST_CASE("dual") {
    CHECK(dual(LineBundleComplex::line_bundle(2, 3)) == LineBundleComplex::line_bundle(2, -3));
    const LineBundleComplex d = dual(x0_map());
    CHECK(d.term(0) == FreeTerm{0});
    CHECK(d.term(1) == FreeTerm{1});
    CHECK(d.differential(0)(0, 0) == P("x0", 2));
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const LineBundleComplex c = random_complex(1 + trial % 2, rng);
        CHECK(dual(dual(c)) == c);
        CHECK(validate(dual(c)).ok);
        CHECK(chern_character(dual(c)) == chern_character(c).dual());
    }
}

TEST_CASE("twist") {
    Rng rng(13);
    const LineBundleComplex c = random_complex(2, rng);
    CHECK(twist(c, 0) == c);
    CHECK(twist(twist(c, 2), -5) == twist(c, -3));
    CHECK(serre_functor(c) == shift(twist(c, -3), 2));
}

TEST_CASE("prune") {
    const LineBundleComplex o = LineBundleComplex::line_bundle(2, 0);
    CHECK(prune(cone(ChainMap::identity(o))).is_empty());
    CHECK(prune(x0_map()) == x0_map());

    Rng rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 2;
        const LineBundleComplex a = random_complex(n, rng);
        const LineBundleComplex a_pruned = prune(a);
        const LineBundleComplex with_cone =
            direct_sum(a, cone(ChainMap::identity(LineBundleComplex::line_bundle(n, -(trial % (n + 1))))));
        const LineBundleComplex p = prune(with_cone);
        CHECK(validate(p).ok);
        CHECK(p.total_rank() == a_pruned.total_rank());
        CHECK(chern_character(p) == chern_character(a));
        // no constant entries between equal twists survive
        for (const auto& [i, m] : p.differentials()) {
            for (std::size_t r = 0; r < m.rows(); ++r) {
                for (std::size_t c = 0; c < m.cols(); ++c) {
                    CHECK_FALSE((m(r, c).degree() == 0 && !m(r, c).is_zero()));
                }
            }
        }
        const LineBundleComplex x = LineBundleComplex::line_bundle(n, -(trial % (n + 1)));
        CHECK(ext_table_in_window(x, p) == ext_table_in_window(x, a));
    }
}

TEST_CASE("every operation preserves validity on random inputs") {
    Rng rng(15);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + trial % 2;
        const LineBundleComplex a = random_complex(n, rng);
        const LineBundleComplex b = random_complex(n, rng);
        const ChainMap f = random_chain_map(a, b, rng);
        CHECK(validate(f).ok);
        CHECK(validate(shift(a, trial % 3 - 1)).ok);
        CHECK(validate(cone(f)).ok);
        CHECK(validate(direct_sum(a, b)).ok);
        CHECK(validate(tensor(a, b)).ok);
        CHECK(validate(dual(a)).ok);
        CHECK(validate(twist(a, trial - 12)).ok);
        CHECK(validate(prune(a)).ok);
        CHECK(chern_character(cone(f)) == chern_character(b) - chern_character(a));
    }
}

TEST_CASE("chain maps from the sampler commute with the differentials") {
    Rng rng(16);
    for (int trial = 0; trial < 15; ++trial) {
        const LineBundleComplex a = random_complex(2, rng);
        const LineBundleComplex b = random_complex(2, rng);
        const ChainMap f = random_chain_map(a, b, rng);
        for (int i = -2; i <= 2; ++i) {
            CHECK(f.component(i + 1) * a.differential(i) == b.differential(i) * f.component(i));
        }
    }
}
