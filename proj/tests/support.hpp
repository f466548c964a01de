#pragma once

// Shared fixtures: the published reference table for the exponential-kernel
// problem (11-point grid, degrees 3..6) and a generator for random
// polynomial problems whose exact solution is known by construction.

#include <array>
#include <random>
#include <string>
#include <vector>

#include <fredholm/fredholm.hpp>

namespace testsupport {

inline constexpr std::array<double, 11> kGrid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

inline constexpr std::array<double, 11> kExactColumn = {
    -0.1855612526, -0.2050768999, -0.2266450257, -0.2504814912, -0.2768248595, -0.3059387842,
    -0.3381146470, -0.3736744748, -0.4129741624, -0.4564070342, -0.5044077810};

inline constexpr std::array<std::array<double, 11>, 4> kApproxColumns = {{
    // degree 3
    {-0.1853868426, -0.2051159200, -0.2267185494, -0.2505049431, -0.2767853131, -0.3058698717,
     -0.3380688310, -0.3736924032, -0.4130508005, -0.4564542350, -0.5042129189},
    // degree 4
    {-0.1855710208, -0.2050729963, -0.2266433924, -0.2504841199, -0.2768280330, -0.3059389289,
     -0.3381115484, -0.3736715751, -0.4129756359, -0.4564113012, -0.5043970842},
    // degree 5
    {-0.1855610006, -0.2050770088, -0.2266449063, -0.2504813833, -0.2768249425, -0.3059389458,
     -0.3381146594, -0.3736743009, -0.4129740843, -0.4564072670, -0.5044071950},
    // degree 6
    {-0.1855612694, -0.2050768958, -0.2266450312, -0.2504814909, -0.2768248544, -0.3059387842,
     -0.3381146522, -0.3736744750, -0.4129741564, -0.4564070387, -0.5044077618},
}};

inline constexpr std::array<std::array<double, 11>, 4> kErrorColumns = {{
    // degree 3
    {9.40e-4, 1.90e-4, 3.24e-4, 9.4e-5, 1.43e-4, 2.25e-4, 1.36e-4, 4.8e-5, 1.86e-4, 1.03e-4, 3.86e-4},
    // degree 4
    {5.264169e-5, 1.903450e-5, 7.206563e-6, 1.049471e-5, 1.146363e-5, 4.732287e-7, 9.164287e-6,
     7.760090e-6, 3.568115e-6, 9.349075e-6, 2.120664e-5},
    // degree 5
    {2.405587e-6, 8.649860e-7, 3.273606e-7, 5.420754e-7, 1.162778e-7, 4.731259e-7, 1.259522e-7,
     3.620806e-7, 2.074285e-7, 4.075118e-7, 9.560245e-7},
    // degree 6
    {9.049198e-8, 1.990287e-8, 2.425409e-8, 9.600473e-10, 1.846251e-8, 7.752014e-11, 1.554022e-8,
     5.635104e-10, 1.441928e-8, 9.997793e-9, 3.797784e-8},
}};

// Published expansions of the degree-3..6 approximations in monomial form.
inline const std::vector<std::vector<double>> kPublishedExpansions = {
    {-0.185387, -0.188957, -0.078167, -0.051702},
    {-0.185571, -0.185273, -0.0947437, -0.025916, -0.012893},
    {-0.185561, -0.18558, -0.0925986, -0.0316362, -0.00645779, -0.00257408},
    {-0.185561, -0.18556, -0.0925932, -0.0308581, -0.00791665, -0.0012903, -0.000427923},
};

inline const std::array<double, 11>& approx_column(int degree) {
    return kApproxColumns.at(static_cast<std::size_t>(degree - 3));
}
inline const std::array<double, 11>& error_column(int degree) {
    return kErrorColumns.at(static_cast<std::size_t>(degree - 3));
}

// A problem built backwards from a chosen polynomial solution: pick phi and
// a separable polynomial kernel, then derive f symbolically so phi solves
//   phi(x) + lambda * Int_0^1 k(t,x) phi(t) dt = f(x)   exactly.
struct ConstructedProblem {
    fredholm::Problem problem;
    fredholm::Polynomial<fredholm::Rational> phi;
};

inline ConstructedProblem make_random_polynomial_problem(std::mt19937& rng) {
    using fredholm::Polynomial;
    using fredholm::Rational;
    std::uniform_int_distribution<int> num_dist(-3, 3);
    std::uniform_int_distribution<int> den_dist(1, 4);
    std::uniform_int_distribution<int> deg_dist(0, 4);
    std::uniform_int_distribution<int> kdeg_dist(0, 2);
    std::uniform_int_distribution<int> terms_dist(1, 2);
    std::uniform_int_distribution<int> sign_dist(0, 1);

    auto random_poly = [&](int max_deg) {
        std::vector<Rational> coeffs;
        const int deg = max_deg;
        coeffs.reserve(static_cast<std::size_t>(deg) + 1);
        for (int i = 0; i <= deg; ++i) coeffs.emplace_back(num_dist(rng), den_dist(rng));
        Polynomial<Rational> p(std::move(coeffs));
        if (p.is_zero()) p = Polynomial<Rational>::constant(Rational(1));
        return p;
    };

    const Polynomial<Rational> phi = random_poly(deg_dist(rng));
    const Rational lambda(sign_dist(rng) ? 1 : -1, 100);
    const int nterms = terms_dist(rng);

    std::string kernel_text;
    Polynomial<Rational> f = phi;  // a(x) = 1
    for (int p = 0; p < nterms; ++p) {
        const Polynomial<Rational> g = random_poly(kdeg_dist(rng));
        const Polynomial<Rational> h = random_poly(kdeg_dist(rng));
        const Rational weight = (h * phi).integrate(Rational(0), Rational(1));
        f = f + lambda * weight * g;
        if (!kernel_text.empty()) kernel_text += " + ";
        kernel_text += "(" + fredholm::to_string(g, 'x') + ")*(" + fredholm::to_string(h, 't') + ")";
    }

    const std::string text = "interval = 0 1\n"
                             "lambda = " + lambda.to_string() + "\n"
                             "a = 1\n"
                             "kernel = " + kernel_text + "\n"
                             "f = " + fredholm::to_string(f, 'x') + "\n"
                             "exact = " + fredholm::to_string(phi, 'x') + "\n";
    return ConstructedProblem{fredholm::parse_problem(text, "<random>"), phi};
}

}  // namespace testsupport
