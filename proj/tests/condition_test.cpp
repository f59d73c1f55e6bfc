#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "qc/condition.hpp"

using namespace qc;

TEST_CASE("term normalization") {
    CHECK(TermSpec(Var::y, 1, Var::x, 0) == TermSpec(Var::x, 0, Var::y, 1));
    CHECK(TermSpec(Var::x, 2, Var::x, 0) == TermSpec(Var::x, 0, Var::x, 2));
    CHECK_THROWS_AS(TermSpec(Var::x, 1, Var::x, 1), validation_error);
    CHECK_THROWS_AS(TermSpec(Var::x, -1, Var::y, 0), validation_error);
}

TEST_CASE("term rendering follows the report syntax") {
    CHECK(TermSpec(Var::x, 0, Var::y, 0).str() == "d(x, y)");
    CHECK(TermSpec(Var::x, 1, Var::y, 0).str() == "d(Tx, y)");
    CHECK(TermSpec(Var::y, 1, Var::x, 0).str() == "d(x, Ty)");
    CHECK(TermSpec(Var::x, 2, Var::y, 1).str() == "d(T^2 x, Ty)");
    CHECK(TermSpec(Var::x, 3, Var::y, 2).str() == "d(T^3 x, T^2 y)");
}

TEST_CASE("template sizes: |C1|=1, |C2|=5, |C3|=9, |C(D)| in {9,10}") {
    CHECK(make_c1().size() == 1);
    CHECK(make_c2().size() == 5);
    CHECK(make_c3().size() == 9);
    for (const RelaxationSpec& d : enumerate_family(6, 6)) {
        auto n = make_cx(d).size();
        CHECK(n >= 9);
        CHECK(n <= 10);
    }
    CHECK(make_cx(RelaxationSpec::make(Family::xy_a3, 3, 2)).size() == 10);
    CHECK(make_cx(RelaxationSpec::make(Family::xy_b2, 2, 2)).size() == 10);
}

TEST_CASE("template membership") {
    CHECK(make_c1().contains(TermSpec(Var::x, 0, Var::y, 0)));
    CHECK(make_c2().contains(TermSpec(Var::x, 1, Var::y, 0)));  // d(Tx,y)
    CHECK(make_c3().contains(TermSpec(Var::x, 2, Var::y, 1)));  // d(T^2x,Ty)
    // Each template extends the previous one.
    auto c1 = make_c1();
    auto c2 = make_c2();
    for (const TermSpec& t : c1.terms()) {
        CHECK(c2.contains(t));
    }
    for (const TermSpec& t : c2.terms()) {
        CHECK(make_c3().contains(t));
    }
    // Adding an existing term is a no-op.
    auto c3 = make_c3();
    CHECK(c3.with(TermSpec(Var::x, 2, Var::y, 1)).size() == c3.size());
    // d(Tx,Ty) never sits in a template.
    CHECK(!make_c3().contains(lhs_term()));
}

TEST_CASE("relaxation spec validation names the violated constraint") {
    CHECK_THROWS_WITH_AS(RelaxationSpec::make(Family::xx, 3, 3),
                         "RelaxationSpec: xx requires a != b", validation_error);
    CHECK_THROWS_AS(RelaxationSpec::make(Family::xy_a3, 2, 0), validation_error);
    CHECK_THROWS_AS(RelaxationSpec::make(Family::xy_b2, 0, 1), validation_error);
    CHECK_THROWS_AS(RelaxationSpec::make(Family::yy, 1, 0), validation_error);
    CHECK_THROWS_AS(RelaxationSpec::make(Family::yy, 2, 2), validation_error);
    CHECK_NOTHROW(RelaxationSpec::make(Family::xy_b2, 0, 2));
}

TEST_CASE("condition validation") {
    CHECK_NOTHROW(Condition(Rational(9, 16), make_c3()));
    CHECK_THROWS_AS(Condition(Rational(0), make_c3()), validation_error);
    CHECK_THROWS_AS(Condition(Rational(1), make_c3()), validation_error);
    CHECK_THROWS_AS(Condition(Rational(5, 4), make_c3()), validation_error);
    CHECK_THROWS_AS(Condition(Rational(1, 2), ConditionTemplate{}), validation_error);
    CHECK_THROWS_AS(Condition(Rational(1, 2), make_c3().with(lhs_term())), validation_error);
}

TEST_CASE("eval_term") {
    Space p = Space::pow2();
    CHECK(eval_term(p, TermSpec(Var::x, 2, Var::y, 0), p.point(0), p.point(2)).is_zero());
    Space z = Space::zeta();
    CHECK(eval_term(z, TermSpec(Var::x, 1, Var::x, 0), z.point(0), z.point(5)).int_value() == 7);
    CHECK(eval_term(p, TermSpec(Var::x, 0, Var::y, 0), p.point(4), p.point(4)).is_zero());
    // Symmetric in the argument order used to build the term.
    for (std::int64_t m = 0; m <= 6; ++m) {
        for (std::int64_t n = 0; n <= 6; ++n) {
            CHECK(eval_term(z, TermSpec(Var::x, 2, Var::y, 1), z.point(m), z.point(n)) ==
                  eval_term(z, TermSpec(Var::y, 1, Var::x, 2), z.point(m), z.point(n)));
        }
    }
}

TEST_CASE("rhs_max_sq over the ten claim-1 terms at the tight pair") {
    Space p = Space::pow2();
    RelaxationSpec d = RelaxationSpec::make(Family::xy_a3, 3, 2);
    ConditionTemplate cond = make_cx(d);
    PointRef x = p.point(0), y = p.point(2);

    // All ten values, cross-checked against the float model.
    std::multiset<long long> values;
    for (const TermSpec& t : cond.terms()) {
        auto v = eval_term(p, t, x, y);
        CHECK(qc::testing::close(qc::testing::term_sq_f(SpaceTag::pow2, t, 0, 2),
                                 v.int_value().convert_to<long double>()));
        values.insert(v.int_value().convert_to<long long>());
    }
    CHECK(values == std::multiset<long long>{9, 1, 4, 49, 16, 9, 0, 4, 16, 64});

    auto max = rhs_max_sq(p, cond, x, y);
    CHECK(max.value.int_value() == 64);
    CHECK(max.term == d.term());
}

TEST_CASE("rhs_max_sq tie-break is the earliest term in normalized order") {
    Space p = Space::pow2();
    // At x = y = 2^0 the four distance-1 terms of (C2) tie; d(Tx,x) comes
    // first in normalized order.
    auto max = rhs_max_sq(p, make_c2(), p.point(0), p.point(0));
    CHECK(max.value.int_value() == 1);
    CHECK(max.term == TermSpec(Var::x, 1, Var::x, 0));
}

TEST_CASE("check_pair") {
    Space p = Space::pow2();
    RelaxationSpec d = RelaxationSpec::make(Family::xy_a3, 3, 2);
    auto full = check_pair(p, make_cx(d), Rational(9, 16), p.point(0), p.point(2));
    CHECK(full.holds);
    CHECK(full.lhs_sq == Rational(36));
    CHECK(full.rhs_sq == Rational(64));

    auto c1 = check_pair(p, make_c1(), Rational(9, 16), p.point(0), p.point(2));
    CHECK(!c1.holds);
    CHECK(c1.lhs_sq == Rational(36));
    CHECK(c1.rhs_sq == Rational(9));

    CHECK(check_pair(p, make_c1(), Rational(1, 2), p.point(3), p.point(3)).holds);
}

TEST_CASE("enumerate_family under small caps") {
    auto specs = enumerate_family(3, 0);
    REQUIRE(specs.size() == 4);
    CHECK(specs[0] == RelaxationSpec::make(Family::xy_a3, 3, 0));
    CHECK(specs[1] == RelaxationSpec::make(Family::xx, 3, 0));
    CHECK(specs[2] == RelaxationSpec::make(Family::yy, 2, 0));
    CHECK(specs[3] == RelaxationSpec::make(Family::yy, 3, 0));

    CHECK(enumerate_family(0, 0).empty());

    auto wider = enumerate_family(3, 2);
    for (int a = 0; a <= 3; ++a) {
        bool found = false;
        for (const auto& s : wider) {
            if (s.family() == Family::xy_b2 && s.a() == a && s.b() == 2) {
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("enumerate_family matches the closed-form count and has no duplicates") {
    for (auto [a_max, b_max] : {std::pair{0, 0}, {3, 0}, {3, 2}, {4, 4}, {8, 8}, {2, 7}}) {
        auto specs = enumerate_family(a_max, b_max);
        CHECK(specs.size() == qc::testing::family_count(a_max, b_max));
        std::set<std::tuple<Family, int, int>> seen;
        for (const auto& s : specs) {
            CHECK(seen.insert({s.family(), s.a(), s.b()}).second);
        }
    }
    CHECK(enumerate_family(8, 8).size() == 221);
}

TEST_CASE("max is monotone in the term set") {
    RelaxationSpec d_pow2 = RelaxationSpec::make(Family::xy_a3, 3, 2);
    RelaxationSpec d_zeta = RelaxationSpec::make(Family::yy, 2, 0);
    for (Space space : {Space::pow2(), Space::zeta()}) {
        const RelaxationSpec& d = space.tag() == SpaceTag::pow2 ? d_pow2 : d_zeta;
        for (std::int64_t m = 0; m <= 8; ++m) {
            for (std::int64_t n = 0; n <= 8; ++n) {
                PointRef x = space.point(m), y = space.point(n);
                auto v1 = rhs_max_sq(space, make_c1(), x, y).value;
                auto v2 = rhs_max_sq(space, make_c2(), x, y).value;
                auto v3 = rhs_max_sq(space, make_c3(), x, y).value;
                auto vx = rhs_max_sq(space, make_cx(d), x, y).value;
                CHECK(v1 <= v2);
                CHECK(v2 <= v3);
                CHECK(v3 <= vx);
                // (C) never fails where (C3) passes with the same factor.
                if (check_pair(space, make_c3(), Rational(9, 16), x, y).holds) {
                    CHECK(check_pair(space, make_cx(d), Rational(9, 16), x, y).holds);
                }
            }
        }
    }
}

TEST_CASE("enumerate and argmax are deterministic across runs") {
    auto a = enumerate_family(5, 5);
    auto b = enumerate_family(5, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
    }
    Space z = Space::zeta();
    for (std::int64_t m = 0; m <= 6; ++m) {
        for (std::int64_t n = 0; n <= 6; ++n) {
            auto m1 = rhs_max_sq(z, make_c3(), z.point(m), z.point(n));
            auto m2 = rhs_max_sq(z, make_c3(), z.point(m), z.point(n));
            CHECK(m1.term == m2.term);
            CHECK(m1.value == m2.value);
        }
    }
}
