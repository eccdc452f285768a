#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtor/errors.hpp"
#include "qtor/quat_matrix.hpp"

#include <cstdlib>
#include <random>

using namespace qtor;

static std::mt19937_64 seeded_rng(uint64_t salt) {
    uint64_t seed = 20260814;
    if (const char* s = std::getenv("QTOR_SEED")) seed = std::strtoull(s, nullptr, 10);
    return std::mt19937_64(seed ^ salt);
}

static Quaternion random_quat(std::mt19937_64& rng, int amp = 3) {
    std::uniform_int_distribution<int> v(-amp, amp);
    std::uniform_int_distribution<int> d(1, 3);
    auto r = [&] { return make_rational(v(rng), d(rng)); };
    return Quaternion(r(), r(), r(), r());
}

static QuatMatrix random_qmat(std::mt19937_64& rng, long rows, long cols) {
    QuatMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c) m(r, c) = random_quat(rng);
    return m;
}

TEST_CASE("quaternion multiplication table") {
    Quaternion i = Quaternion::unit_i(), j = Quaternion::unit_j(), k = Quaternion::unit_k();
    Quaternion one(1);
    CHECK(i * i == Quaternion(-1));
    CHECK(j * j == Quaternion(-1));
    CHECK(k * k == Quaternion(-1));
    CHECK(i * j == k);
    CHECK(j * i == Quaternion(0) - k);
    CHECK(j * k == i);
    CHECK(k * j == Quaternion(0) - i);
    CHECK(k * i == j);
    CHECK(i * k == Quaternion(0) - j);
    CHECK(one * i == i);
    CHECK((i * j) * k == Quaternion(-1));
}

TEST_CASE("conjugation, norm, inverse") {
    auto rng = seeded_rng(0x11);
    for (int t = 0; t < 40; ++t) {
        Quaternion q = random_quat(rng);
        CHECK((q * conj(q)).is_real());
        CHECK((q * conj(q)).re == norm(q));
        CHECK(norm(q) >= 0);
        if (!q.is_zero()) {
            CHECK(q * inverse(q) == Quaternion(1));
            CHECK(inverse(q) * q == Quaternion(1));
        }
        Quaternion p = random_quat(rng);
        CHECK(conj(p * q) == conj(q) * conj(p)); // anti-homomorphism
        CHECK(norm(p * q) == norm(p) * norm(q));
    }
    CHECK_THROWS_AS(inverse(Quaternion(0)), invalid_input);
}

TEST_CASE("multiplication is associative but not commutative") {
    auto rng = seeded_rng(0x12);
    for (int t = 0; t < 40; ++t) {
        Quaternion a = random_quat(rng), b = random_quat(rng), c = random_quat(rng);
        CHECK((a * b) * c == a * (b * c));
    }
    Quaternion i = Quaternion::unit_i(), j = Quaternion::unit_j();
    CHECK_FALSE(i * j == j * i);
}

// ---- realification -----------------------------------------------------------

TEST_CASE("realify is an algebra map and unrealify inverts it") {
    auto rng = seeded_rng(0x13);
    for (int t = 0; t < 25; ++t) {
        QuatMatrix a = random_qmat(rng, 2, 3), b = random_qmat(rng, 3, 2);
        RatMat ra = realify(a), rb = realify(b);
        CHECK(ra.rows() == 8);
        CHECK(ra.cols() == 12);
        CHECK(RatMat(ra * rb) == realify(a * b));
        CHECK(unrealify(ra) == a);
    }
    // sums too
    QuatMatrix a = random_qmat(rng, 2, 2), b = random_qmat(rng, 2, 2);
    CHECK(RatMat(realify(a) + realify(b)) == realify(a + b));
}

TEST_CASE("realified vector round trip matches matrix action") {
    auto rng = seeded_rng(0x14);
    QuatMatrix a = random_qmat(rng, 2, 2);
    std::vector<Quaternion> x = {random_quat(rng), random_quat(rng)};
    RatVec rx = realify_vector(x);
    CHECK(rx.size() == 8);
    QuatMatrix xc(2, 1);
    xc(0, 0) = x[0];
    xc(1, 0) = x[1];
    QuatMatrix ax = a * xc;
    RatVec want = realify_vector({ax(0, 0), ax(1, 0)});
    CHECK(RatVec(realify(a) * rx) == want);
    CHECK(unrealify_vector(rx) == x);
}

// ---- Dieudonne determinant ----------------------------------------------------

TEST_CASE("dieudonne determinant on real-entried matrices is |det|") {
    auto rng = seeded_rng(0x15);
    std::uniform_int_distribution<int> v(-4, 4);
    for (int t = 0; t < 30; ++t) {
        QuatMatrix a(2, 2);
        RatMat plain(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                Rational x(v(rng));
                a(r, c) = Quaternion(x);
                plain(r, c) = x;
            }
        Dieudonne d = dieudonne_det(a);
        REQUIRE(d.is_rational);
        Rational det = det_rational(plain);
        if (det < 0) det = -det;
        CHECK(d.value == det);
    }
}

TEST_CASE("dieudonne multiplicativity on rational-valued pairs") {
    auto rng = seeded_rng(0x16);
    std::uniform_int_distribution<int> v(-3, 3);
    for (int t = 0; t < 30; ++t) {
        QuatMatrix a(2, 2), b(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                a(r, c) = Quaternion(Rational(v(rng)));
                b(r, c) = Quaternion(Rational(v(rng)));
            }
        Dieudonne da = dieudonne_det(a), db = dieudonne_det(b), dab = dieudonne_det(a * b);
        REQUIRE(da.is_rational);
        REQUIRE(db.is_rational);
        REQUIRE(dab.is_rational);
        CHECK(dab.value == da.value * db.value);
    }
}

TEST_CASE("dieudonne of a unit-quaternion diagonal is 1") {
    QuatMatrix a = QuatMatrix::identity(2);
    a(0, 0) = Quaternion::unit_i();
    Dieudonne d = dieudonne_det(a);
    REQUIRE(d.is_rational);
    CHECK(d.value == 1);
}

TEST_CASE("irrational fourth root is flagged, not approximated") {
    QuatMatrix a = QuatMatrix::identity(2);
    a(0, 0) = Quaternion(1) + Quaternion::unit_i(); // N = 2, realified det 4
    Dieudonne d = dieudonne_det(a);
    CHECK_FALSE(d.is_rational);
    CHECK(d.det_realified == 4);
}

TEST_CASE("imaginary pair diagnostic lands in Im(H)") {
    auto rng = seeded_rng(0x17);
    for (int t = 0; t < 20; ++t) {
        std::vector<Quaternion> v1 = {random_quat(rng), random_quat(rng)};
        std::vector<Quaternion> v2 = {random_quat(rng), random_quat(rng)};
        Quaternion d = imaginary_pair_diagnostic(v1, v2);
        CHECK(d.re == 0);
    }
}

// ---- symplectic test ------------------------------------------------------------

TEST_CASE("J itself and simple generators are symplectic") {
    QuatMatrix J = sympl_J();
    CHECK(is_quaternionic_symplectic(J));
    CHECK(is_quaternionic_symplectic(QuatMatrix::identity(2)));

    // diag(a, a / N(a))
    Quaternion a(Rational(1), Rational(1, 2), Rational(0), Rational(1));
    QuatMatrix d = QuatMatrix::identity(2);
    d(0, 0) = a;
    d(1, 1) = inverse(conj(a));
    CHECK(is_quaternionic_symplectic(d));

    // real shear
    QuatMatrix s = QuatMatrix::identity(2);
    s(0, 1) = Quaternion(Rational(3, 2));
    CHECK(is_quaternionic_symplectic(s));

    // a non-example
    QuatMatrix bad = QuatMatrix::identity(2);
    bad(0, 0) = Quaternion(2);
    CHECK_FALSE(is_quaternionic_symplectic(bad));
}

TEST_CASE("quaternionic inverse via realification") {
    auto rng = seeded_rng(0x18);
    int found = 0;
    while (found < 10) {
        QuatMatrix a = random_qmat(rng, 2, 2);
        if (!quat_invertible(a)) continue;
        ++found;
        QuatMatrix inv = quat_inverse(a);
        CHECK(a * inv == QuatMatrix::identity(2));
        CHECK(inv * a == QuatMatrix::identity(2));
    }
    QuatMatrix z(2, 2);
    CHECK_FALSE(quat_invertible(z));
    CHECK_THROWS_AS(quat_inverse(z), invalid_input);
}

// ---- exact rational kernel -------------------------------------------------------

TEST_CASE("real_kernel spans the kernel exactly") {
    auto rng = seeded_rng(0x19);
    std::uniform_int_distribution<int> v(-3, 3), dims(1, 6);
    for (int t = 0; t < 30; ++t) {
        RatMat a(dims(rng), dims(rng));
        for (long r = 0; r < a.rows(); ++r)
            for (long c = 0; c < a.cols(); ++c) a(r, c) = Rational(v(rng));
        RatMat k = real_kernel(a);
        if (k.cols() > 0) CHECK(RatMat(a * k).isZero());
        CHECK(k.cols() == a.cols() - rank_rational(a));
        if (k.cols() > 0) CHECK(rank_rational(k) == k.cols());
    }
}
