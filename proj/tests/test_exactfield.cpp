// Exact scalars (rationals and cyclotomics) and exact linear algebra:
// kernels, eigenspaces, echelon uniqueness, randomized arithmetic laws.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "rvs/cyclotomic.hpp"
#include "rvs/matrix.hpp"
#include "rvs/rational.hpp"
#include "rvs/rootsys.hpp"
#include "rvs/strata.hpp"

using namespace rvs;

TEST_CASE("rational helpers") {
    CHECK(is_integer(Rational(6, 3)));
    CHECK(rfloor(Rational(-7, 2)) == -4);
    CHECK(rfloor(Rational(7, 2)) == 3);
    CHECK(lcm_int(4, 6) == 12);
    CHECK(*parse_rational("3/2") == Rational(3, 2));
    CHECK(*parse_rational("-5") == Rational(-5));
    CHECK(!parse_rational("3/0"));
    CHECK(!parse_rational("abc"));
    CHECK(to_string(Rational(3, 2)) == "3/2");
    CHECK(to_string(Rational(4)) == "4");
}

TEST_CASE("randomized exact arithmetic laws over Q") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long long> pick(-1000000, 1000000);
    std::uniform_int_distribution<long long> pick_pos(1, 1000000);
    for (int i = 0; i < 10000; ++i) {
        Rational a(pick(rng), pick_pos(rng));
        Rational b(pick(rng), pick_pos(rng));
        REQUIRE((a + b) - b == a);
        if (b != 0) REQUIRE((a * b) / b == a);
    }
}

TEST_CASE("randomized exact arithmetic laws over Q(zeta_12)") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(-50, 50);
    auto rand_cyc = [&] {
        std::vector<Rational> c(euler_phi(12));
        for (auto& x : c) x = Rational(pick(rng), 1 + std::abs(pick(rng)));
        return Cyclotomic(12, c);
    };
    for (int i = 0; i < 300; ++i) {
        Cyclotomic a = rand_cyc(), b = rand_cyc();
        REQUIRE((a + b) - b == a);
        if (!b.is_zero()) REQUIRE((a * b) / b == a);
    }
}

TEST_CASE("cyclotomic roots of unity for l <= 30") {
    for (int l = 1; l <= 30; ++l) {
        Cyclotomic z = Cyclotomic::zeta(l);
        // Phi_l(zeta_l) = 0
        const auto& phi = cyclotomic_polynomial(l);
        Cyclotomic acc(0), power(1);
        for (const auto& coeff : phi) {
            acc = acc + Cyclotomic(coeff) * power;
            power = power * z;
        }
        CHECK(acc.is_zero());
        CHECK(z.pow(l) == Cyclotomic(1));
        for (int j = 1; j < l; ++j) CHECK(!(z.pow(j) == Cyclotomic(1)));
    }
}

TEST_CASE("cyclotomic inverse and negative powers") {
    Cyclotomic z = Cyclotomic::zeta(12);
    CHECK(z * z.inverse() == Cyclotomic(1));
    CHECK(z.pow(-5) == z.pow(7));
    CHECK(Cyclotomic::zeta(12, -1) == z.pow(11));
    CHECK_THROWS_AS(Cyclotomic(0).inverse(), std::domain_error);
}

TEST_CASE("kernel examples") {
    using QM = Matrix<Rational>;
    CHECK(kernel(QM::identity(2)).rows() == 0);
    CHECK(kernel(QM(2, 2)).rows() == 2);
    QM m(2, 2);
    m(0, 0) = 1; m(0, 1) = 1;
    m(1, 0) = 2; m(1, 1) = 2;
    auto ker = kernel(m);
    REQUIRE(ker.rows() == 1);
    Subspace<Rational> s(ker);
    CHECK(s.contains({Rational(1), Rational(-1)}));
    CHECK(!s.contains({Rational(1), Rational(1)}));
    CHECK(rank(m) + ker.rows() == m.cols());
}

TEST_CASE("eigenspace examples") {
    Matrix<Rational> s(1, 1);
    s(0, 0) = -1;  // A1 reflection on 1-dim t
    CHECK(eigenspace(s, Rational(-1)).dim() == 1);
    CHECK(eigenspace(s, Rational(1)).dim() == 0);

    // A2 Coxeter rotation on t over Q(zeta_3): fixed space is zero, each
    // primitive cube root of unity has a 1-dim eigenspace.
    auto rs = build_root_system('A', 2);
    auto cox = element_from_word(rs, {0, 1});
    REQUIRE(element_order(cox) == 3);
    CMat wm = to_cyclotomic(to_rational(cox.matrix));
    CHECK(eigenspace(wm, Cyclotomic::zeta(3, 0)).dim() == 0);
    CHECK(eigenspace(wm, Cyclotomic::zeta(3, -1)).dim() == 1);
    CHECK(eigenspace(wm, Cyclotomic::zeta(3, -2)).dim() == 1);
}

TEST_CASE("functional_vanishes_on") {
    Subspace<Rational> zero = Subspace<Rational>::zero(2);
    CHECK(functional_vanishes_on<Rational>({Rational(1), Rational(-1)}, zero));

    // A1 with t = {(x,-x)}: alpha = x1 - x2 is 2x on t, nonzero.
    auto a1 = build_root_system('A', 1);
    Subspace<Rational> t = Subspace<Rational>::full(1);
    std::vector<Rational> alpha{Rational(a1.roots_t[0][0])};
    CHECK(!functional_vanishes_on(alpha, t));

    // A2 Coxeter: no root vanishes on the zeta_3^{-1} eigenspace.
    auto a2 = build_root_system('A', 2);
    auto cox = element_from_word(a2, {0, 1});
    auto eig = eigenspace(to_cyclotomic(to_rational(cox.matrix)), Cyclotomic::zeta(3, -1));
    int a12 = a2.root_index({1, -1, 0});
    std::vector<Cyclotomic> av;
    for (long long c : a2.roots_t[a12]) av.push_back(Cyclotomic(Rational(c)));
    CHECK(!functional_vanishes_on(av, eig));
}

TEST_CASE("echelon uniqueness: shuffled bases reduce identically") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        Matrix<Rational> basis(3, 5);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 5; ++j) basis(i, j) = Rational(pick(rng));
        // Second spanning set: random invertible recombination of the rows.
        Matrix<Rational> mix(3, 3);
        do {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) mix(i, j) = Rational(pick(rng));
        } while (rank(mix) < 3);
        Subspace<Rational> s1(basis), s2(mix * basis);
        REQUIRE(s1 == s2);
    }
}

TEST_CASE("solve and inverse") {
    Matrix<Rational> a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1;
    a(1, 0) = 1; a(1, 1) = 1;
    auto x = solve(a, {Rational(3), Rational(2)});
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    auto inv = inverse(a);
    REQUIRE(inv);
    CHECK((*inv) * a == Matrix<Rational>::identity(2));

    Matrix<Rational> sing(2, 2);
    sing(0, 0) = 1; sing(0, 1) = 1;
    sing(1, 0) = 1; sing(1, 1) = 1;
    CHECK(!inverse(sing));
    CHECK(!solve(sing, {Rational(0), Rational(1)}));
}
