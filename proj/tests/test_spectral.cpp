#include "doctest.h"

#include <random>

#include "subwave/spectral.hpp"
#include "support.hpp"

using namespace subwave;
using testsupport::max_abs;
using testsupport::random_theta;
using testsupport::two_qubit_eigenvalues;

namespace {

SpectralDecomposition decompose_at(int n, double theta, double gamma0 = 1.0) {
    const ChainConfig config{n, theta, gamma0};
    return decompose(build_coupling_matrix(config), config);
}

const DecayMode& mode_with_symmetry(const SpectralDecomposition& decomp, Symmetry s,
                                    std::size_t skip_front = 0) {
    for (std::size_t i = skip_front; i < decomp.modes.size(); ++i) {
        if (decomp.modes[i].symmetry == s) return decomp.modes[i];
    }
    REQUIRE(false);
    return decomp.modes.front();
}

}  // namespace

TEST_CASE("single qubit decomposes trivially") {
    const SpectralDecomposition decomp = decompose_at(1, 0.42, 2.5);
    REQUIRE(decomp.modes.size() == 1);
    const DecayMode& mode = decomp.modes.front();
    CHECK(std::abs(mode.eigenvalue - Complex(1, 0)) < 1e-14);
    CHECK(mode.decay_rate == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(std::abs(mode.eigenvector(0) - Complex(1, 0)) < 1e-14);
    CHECK(mode.symmetry == Symmetry::Symmetric);
}

TEST_CASE("two qubits at theta = pi/2") {
    const SpectralDecomposition decomp = decompose_at(2, M_PI / 2);
    REQUIRE(decomp.modes.size() == 2);
    // Ties in Re lambda break by descending Im lambda.
    CHECK(std::abs(decomp.modes[0].eigenvalue - Complex(1, 1)) < 1e-12);
    CHECK(std::abs(decomp.modes[1].eigenvalue - Complex(1, -1)) < 1e-12);

    Eigen::VectorXcd sym(2), anti(2);
    sym << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    anti << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    CHECK((decomp.modes[0].eigenvector - sym).norm() < 1e-10);
    CHECK((decomp.modes[1].eigenvector - anti).norm() < 1e-10);
    CHECK(decomp.modes[0].symmetry == Symmetry::Symmetric);
    CHECK(decomp.modes[1].symmetry == Symmetry::AntiSymmetric);
}

TEST_CASE("two-qubit spectrum matches the analytic eigenvalues") {
    std::mt19937_64 rng(111);
    for (int s = 0; s < 30; ++s) {
        const double theta = random_theta(rng, 0.02);
        const auto [sym, anti] = two_qubit_eigenvalues(theta);
        const SpectralDecomposition decomp = decompose_at(2, theta);
        const Complex first = sym.real() >= anti.real() ? sym : anti;
        const Complex second = sym.real() >= anti.real() ? anti : sym;
        CHECK(std::abs(decomp.modes[0].eigenvalue - first) < 1e-12);
        CHECK(std::abs(decomp.modes[1].eigenvalue - second) < 1e-12);
    }
}

TEST_CASE("three-qubit decay rates near theta = 2*pi") {
    for (const double delta : {1e-2, 1e-3}) {
        const SpectralDecomposition decomp = decompose_at(3, 2.0 * M_PI + delta);
        const DecayMode& sup = decomp.modes.front();
        const DecayMode& sub_sym = mode_with_symmetry(decomp, Symmetry::Symmetric, 1);
        const DecayMode& sub_anti = mode_with_symmetry(decomp, Symmetry::AntiSymmetric);

        const double tol = 5.0 * delta * delta * delta;
        const Complex expected_sym(2.0 / 27.0 * delta * delta, -2.0 / 3.0 * delta);
        const Complex expected_anti(2.0 * delta * delta, -2.0 * delta);
        CHECK(std::abs(sub_sym.eigenvalue - expected_sym) < tol);
        CHECK(std::abs(sub_anti.eigenvalue - expected_anti) < tol);
        CHECK(std::abs(sup.eigenvalue.real() - 3.0) < 5.0 * delta * delta);
    }
}

TEST_CASE("three-qubit eigenvector shapes near theta = 2*pi") {
    // First-order forms: sup ~ (1, 1 - i*delta/3, 1)/sqrt(3) and
    // sub+ ~ (1, -(2 + 2i*delta/3), 1)/sqrt(6), accurate to O(delta^2).
    const auto errors_at = [](double delta) {
        const SpectralDecomposition decomp = decompose_at(3, 2.0 * M_PI + delta);
        Eigen::Vector3cd sup_ref(1.0, Complex(1.0, -delta / 3.0), 1.0);
        Eigen::Vector3cd sub_ref(1.0, Complex(-2.0, -2.0 * delta / 3.0), 1.0);
        sup_ref.normalize();
        sub_ref.normalize();
        const DecayMode& sub_sym = mode_with_symmetry(decomp, Symmetry::Symmetric, 1);
        return std::pair{(decomp.modes[0].eigenvector - sup_ref).norm(),
                         (sub_sym.eigenvector - sub_ref).norm()};
    };
    for (const double delta : {0.02, 0.01}) {
        const auto [e_sup, e_sub] = errors_at(delta);
        CHECK(e_sup < 0.15 * delta * delta);
        CHECK(e_sub < 0.15 * delta * delta);
    }
    // Quadratic convergence: quartering delta cuts the error ~16x.
    const auto [coarse_sup, coarse_sub] = errors_at(0.04);
    const auto [fine_sup, fine_sub] = errors_at(0.01);
    CHECK(coarse_sup / fine_sup == doctest::Approx(16.0).epsilon(0.2));
    CHECK(coarse_sub / fine_sub == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("negating theta conjugates the spectrum") {
    std::mt19937_64 rng(555);
    for (int s = 0; s < 10; ++s) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const double theta = random_theta(rng, 0.05);
        const SpectralDecomposition plus = decompose_at(n, theta);
        const SpectralDecomposition minus = decompose_at(n, -theta);
        for (int k = 0; k < n; ++k) {
            CHECK(plus.modes[static_cast<std::size_t>(k)].decay_rate ==
                  doctest::Approx(minus.modes[static_cast<std::size_t>(k)].decay_rate)
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("decomposition stays healthy at n = 100") {
    const SpectralDecomposition decomp = decompose_at(100, 1.234);
    double trace = 0.0;
    int symmetric = 0, antisymmetric = 0;
    for (const DecayMode& mode : decomp.modes) {
        trace += mode.eigenvalue.real();
        CHECK(mode.decay_rate >= -1e-10);
        if (mode.symmetry == Symmetry::Symmetric) ++symmetric;
        if (mode.symmetry == Symmetry::AntiSymmetric) ++antisymmetric;
    }
    CHECK(trace == doctest::Approx(100.0).epsilon(1e-10));
    CHECK(symmetric == 50);
    CHECK(antisymmetric == 50);
    CHECK(decomp.eigenvector_condition < 1e3);
}

TEST_CASE("symmetry classification") {
    const MirrorMatrix p = build_mirror_matrix(3);
    Eigen::VectorXcd v(3);
    v << 1, 1, 1;
    CHECK(classify_symmetry(v.normalized(), p, 1e-6) == Symmetry::Symmetric);
    v << 1, 0, -1;
    CHECK(classify_symmetry(v.normalized(), p, 1e-6) == Symmetry::AntiSymmetric);
    v << 1, 0, 0;
    CHECK(classify_symmetry(v, p, 1e-6) == Symmetry::Unclassified);
}

TEST_CASE("subspace dimensions") {
    CHECK(subspace_dimensions(4).symmetric == 2);
    CHECK(subspace_dimensions(4).antisymmetric == 2);
    CHECK(subspace_dimensions(3).symmetric == 2);
    CHECK(subspace_dimensions(3).antisymmetric == 1);
    CHECK(subspace_dimensions(1).symmetric == 1);
    CHECK(subspace_dimensions(1).antisymmetric == 0);
}

TEST_CASE("mode symmetry counts match the subspace dimensions") {
    std::mt19937_64 rng(222);
    for (int n = 2; n <= 10; ++n) {
        const SubspaceDims expected = subspace_dimensions(n);
        for (int s = 0; s < 10; ++s) {
            const SpectralDecomposition decomp = decompose_at(n, random_theta(rng, 0.05));
            int symmetric = 0, antisymmetric = 0;
            for (const DecayMode& mode : decomp.modes) {
                if (mode.symmetry == Symmetry::Symmetric) ++symmetric;
                if (mode.symmetry == Symmetry::AntiSymmetric) ++antisymmetric;
            }
            CHECK(symmetric == expected.symmetric);
            CHECK(antisymmetric == expected.antisymmetric);
        }
    }
}

TEST_CASE("decomposition invariants") {
    std::mt19937_64 rng(333);
    for (int n = 1; n <= 12; ++n) {
        for (int s = 0; s < 10; ++s) {
            const double theta = random_theta(rng, 0.05);
            const ChainConfig config{n, theta, 1.0};
            const CouplingMatrix j = build_coupling_matrix(config);
            const SpectralDecomposition decomp = decompose(j, config);

            // Sorted by descending real part; unit, phase-fixed eigenvectors.
            Complex sum = 0.0;
            Complex product = 1.0;
            for (std::size_t k = 0; k < decomp.modes.size(); ++k) {
                const DecayMode& mode = decomp.modes[k];
                if (k > 0) {
                    CHECK(mode.eigenvalue.real() <=
                          decomp.modes[k - 1].eigenvalue.real() + 1e-14);
                }
                CHECK(mode.eigenvector.norm() == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(mode.decay_rate >= -1e-10);
                const MirrorMatrix p = build_mirror_matrix(n);
                if (mode.symmetry == Symmetry::Symmetric) {
                    CHECK((p * mode.eigenvector - mode.eigenvector).norm() < 1e-6);
                } else if (mode.symmetry == Symmetry::AntiSymmetric) {
                    CHECK((p * mode.eigenvector + mode.eigenvector).norm() < 1e-6);
                }
                for (Eigen::Index i = 0; i < mode.eigenvector.size(); ++i) {
                    if (std::abs(mode.eigenvector(i)) > 1e-8) {
                        CHECK(mode.eigenvector(i).real() > 0.0);
                        CHECK(std::abs(mode.eigenvector(i).imag()) < 1e-10);
                        break;
                    }
                }
                sum += mode.eigenvalue;
                product *= mode.eigenvalue;
            }
            CHECK(std::abs(sum - Complex(n, 0)) < 1e-8);
            const Complex det = determinant_closed_form(config);
            CHECK(std::abs(product - det) <= 1e-6 * std::abs(det));

            // Eigen-reconstruction.
            const Eigen::MatrixXcd v = decomp.eigenvector_matrix();
            Eigen::MatrixXcd lambda = Eigen::MatrixXcd::Zero(n, n);
            for (int k = 0; k < n; ++k) {
                lambda(k, k) = decomp.modes[static_cast<std::size_t>(k)].eigenvalue;
            }
            CHECK(max_abs(j * v - v * lambda) < 1e-8);
        }
    }
}

TEST_CASE("decomposition at the singular point theta = pi") {
    const SpectralDecomposition decomp = decompose_at(3, M_PI);
    REQUIRE(decomp.modes.size() == 3);
    CHECK(std::abs(decomp.modes[0].eigenvalue - Complex(3, 0)) < 1e-10);
    CHECK(std::abs(decomp.modes[1].eigenvalue) < 1e-10);
    CHECK(std::abs(decomp.modes[2].eigenvalue) < 1e-10);
    // Superradiant mode is the alternating state, symmetric for odd n.
    CHECK(decomp.modes[0].symmetry == Symmetry::Symmetric);
    int antisymmetric = 0;
    for (const DecayMode& mode : decomp.modes) {
        CHECK(mode.symmetry != Symmetry::Unclassified);
        if (mode.symmetry == Symmetry::AntiSymmetric) ++antisymmetric;
    }
    CHECK(antisymmetric == 1);
    CHECK(decomp.eigenvector_condition < 1e3);
}

TEST_CASE("perturbative superradiant mode") {
    SUBCASE("exactly at theta = 2*pi") {
        const PerturbativeMode mode = perturbative_superradiant({3, 2.0 * M_PI, 1.0});
        CHECK(std::abs(mode.eigenvalue - Complex(3, 0)) < 1e-12);
        Eigen::VectorXcd dicke = Eigen::VectorXcd::Constant(3, 1.0 / std::sqrt(3.0));
        CHECK((mode.eigenvector - dicke).norm() < 1e-12);
    }

    SUBCASE("two qubits near 2*pi: lambda ~ 2 + i*delta") {
        const double delta = 0.01;
        const PerturbativeMode mode = perturbative_superradiant({2, 2.0 * M_PI + delta, 1.0});
        CHECK(std::abs(mode.eigenvalue - Complex(2.0, delta)) < 1e-12);
        const Complex exact = 1.0 + std::exp(Complex(0.0, delta));
        CHECK(std::abs(mode.eigenvalue - exact) < delta * delta);
    }

    SUBCASE("second-order agreement with the exact two-qubit eigenvalue") {
        const auto error_at = [](double delta) {
            const PerturbativeMode mode =
                perturbative_superradiant({2, 2.0 * M_PI + delta, 1.0});
            return std::abs(mode.eigenvalue - (1.0 + std::exp(Complex(0.0, delta))));
        };
        const double c = std::max(error_at(0.02) / (0.02 * 0.02),
                                  error_at(0.01) / (0.01 * 0.01));
        CHECK(error_at(0.005) <= 1.1 * c * 0.005 * 0.005);
    }

    SUBCASE("second-order agreement against the full decomposition") {
        for (const int n : {3, 5}) {
            const auto error_at = [n](double delta) {
                const ChainConfig config{n, 2.0 * M_PI + delta, 1.0};
                const SpectralDecomposition decomp =
                    decompose(build_coupling_matrix(config), config);
                const PerturbativeMode approx = perturbative_superradiant(config);
                return std::abs(decomp.modes.front().eigenvalue - approx.eigenvalue);
            };
            const double c = std::max(error_at(0.02) / (0.02 * 0.02),
                                      error_at(0.01) / (0.01 * 0.01));
            CHECK(error_at(0.005) <= 1.1 * c * 0.005 * 0.005);
        }
    }

    SUBCASE("odd multiple branch") {
        const PerturbativeMode mode = perturbative_superradiant({3, 3.0 * M_PI, 1.0});
        // Alternating pattern, phase-fixed; symmetric for odd n.
        Eigen::VectorXcd alternating(3);
        alternating << 1.0, -1.0, 1.0;
        alternating /= std::sqrt(3.0);
        CHECK((mode.eigenvector - alternating).norm() < 1e-12);
        CHECK(classify_symmetry(mode.eigenvector, build_mirror_matrix(3), 1e-6) ==
              Symmetry::Symmetric);

        // First-order coefficient must follow the odd-branch expansion:
        // exact two-qubit superradiant eigenvalue is 1 + e^{i delta}.
        const double delta = 0.05;
        const PerturbativeMode two = perturbative_superradiant({2, M_PI + delta, 1.0});
        const Complex exact = 1.0 + std::exp(Complex(0.0, delta));
        CHECK(std::abs(two.eigenvalue - exact) < 2.0 * delta * delta);
    }

    SUBCASE("out of range") {
        CHECK_THROWS_AS(perturbative_superradiant({3, 2.0 * M_PI + 0.31, 1.0}),
                        OutOfPerturbativeRangeError);
    }
}

TEST_CASE("protected subspace reports") {
    SUBCASE("three qubits at 2.1*pi") {
        const ProtectionReport report = symmetry_protection_report({3, 2.1 * M_PI, 1.0});
        CHECK(report.superradiant_symmetry == Symmetry::Symmetric);
        CHECK(report.protected_subspace == Symmetry::AntiSymmetric);
        // Exact anti-symmetric rate is 1 - cos(2*delta); ~2*delta^2 at leading order.
        const double delta = 0.1 * M_PI;
        CHECK(report.max_protected_decay_rate ==
              doctest::Approx(1.0 - std::cos(2.0 * delta)).epsilon(1e-10));
        CHECK(report.max_protected_decay_rate ==
              doctest::Approx(2.0 * delta * delta).epsilon(0.15));
    }

    SUBCASE("four qubits near an odd multiple") {
        const ProtectionReport report = symmetry_protection_report({4, M_PI + 0.05, 1.0});
        CHECK(report.superradiant_symmetry == Symmetry::AntiSymmetric);
        CHECK(report.protected_subspace == Symmetry::Symmetric);
    }

    SUBCASE("two qubits near zero") {
        const ProtectionReport report = symmetry_protection_report({2, 0.05, 1.0});
        CHECK(report.superradiant_symmetry == Symmetry::Symmetric);
        CHECK(report.max_protected_decay_rate < 0.01);
    }
}

TEST_CASE("protected modes stay subradiant near even multiples") {
    // The anti-symmetric rates grow like c_n * delta^2 with c_n increasing in
    // n (measured c_8 ~ 37), so the sub-single-emitter window shrinks with n;
    // |delta| <= 0.15 keeps every n <= 8 clear of gamma0.
    std::mt19937_64 rng(444);
    for (int n = 2; n <= 8; ++n) {
        const double width = n <= 6 ? 0.2 : 0.15;
        std::uniform_real_distribution<double> delta_dist(-width, width);
        for (int s = 0; s < 5; ++s) {
            const double base = 2.0 * M_PI * static_cast<double>(1 + rng() % 2);
            const double delta = delta_dist(rng);
            const SpectralDecomposition decomp = decompose_at(n, base + delta);
            CHECK(decomp.modes.front().decay_rate > 0.9 * (n - 1));
            for (const DecayMode& mode : decomp.modes) {
                if (mode.symmetry == Symmetry::AntiSymmetric) {
                    CHECK(mode.decay_rate < 1.0);
                }
            }
        }
    }
    // Boundary sanity: at delta = 0.2 both claims hold through n = 6.
    for (int n = 2; n <= 6; ++n) {
        const SpectralDecomposition decomp = decompose_at(n, 2.0 * M_PI + 0.2);
        CHECK(decomp.modes.front().decay_rate > 0.9 * (n - 1));
        for (const DecayMode& mode : decomp.modes) {
            if (mode.symmetry == Symmetry::AntiSymmetric) CHECK(mode.decay_rate < 1.0);
        }
    }
}

TEST_CASE("rejects invalid classification tolerance") {
    const ChainConfig config{2, 1.0, 1.0};
    const CouplingMatrix j = build_coupling_matrix(config);
    CHECK_THROWS_AS(decompose(j, config, DecomposeOptions{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(decompose(j, config, DecomposeOptions{0.5}), std::invalid_argument);
}
