#include <catch2/catch_amalgamated.hpp>

#include "rigidlid/linalg.hpp"

using namespace rigidlid;
using Catch::Matchers::WithinAbs;

TEST_CASE("matrix product and transpose") {
    Mat4 a = Mat4::diag(1.0, 2.0, 3.0, 4.0);
    a(0, 3) = 5.0;
    Mat4 b = Mat4::identity();
    b(1, 2) = -2.0;
    Mat4 c = a * b;
    REQUIRE(c(0, 3) == 5.0);
    REQUIRE(c(1, 2) == -4.0);
    REQUIRE(c.transposed()(3, 0) == 5.0);
}

TEST_CASE("jacobi eigenvalues of a known symmetric matrix") {
    // eigenvalues of [[2,1],[1,2]] plus a decoupled diag(5, -3)
    Mat4 m;
    m(0, 0) = 2.0; m(0, 1) = 1.0;
    m(1, 0) = 1.0; m(1, 1) = 2.0;
    m(2, 2) = 5.0;
    m(3, 3) = -3.0;
    const Vec4 ev = symmetric_eigenvalues(m);
    REQUIRE_THAT(ev[0], WithinAbs(-3.0, 1e-13));
    REQUIRE_THAT(ev[1], WithinAbs(1.0, 1e-13));
    REQUIRE_THAT(ev[2], WithinAbs(3.0, 1e-13));
    REQUIRE_THAT(ev[3], WithinAbs(5.0, 1e-13));
}

TEST_CASE("jacobi handles an already diagonal matrix") {
    const Vec4 ev = symmetric_eigenvalues(Mat4::diag(4.0, 1.0, 3.0, 2.0));
    REQUIRE(ev == Vec4{1.0, 2.0, 3.0, 4.0});
}

TEST_CASE("min eigenvalue detects indefiniteness") {
    Mat4 m = Mat4::diag(1.0, 1.0, 1.0, 1.0);
    m(0, 1) = m(1, 0) = 2.0;  // 2x2 block has eigenvalues -1 and 3
    REQUIRE_THAT(min_eigenvalue(m), WithinAbs(-1.0, 1e-13));
}
