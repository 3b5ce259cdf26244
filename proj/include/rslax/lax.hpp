#pragma once

#include <optional>
#include <vector>

#include "rslax/cauchy.hpp"
#include "rslax/elliptic.hpp"

namespace rslax {

struct RSConfig {
    std::vector<Complex> q;
    std::vector<Complex> P;
    Complex hbar{};
    Complex mu{};
    Lattice lat;
    Complex q_inf{};
    Complex q_zero{};

    std::size_t n() const { return q.size(); }

    // mu = hbar and q_zero = q_inf + n hbar
    static RSConfig make(std::vector<Complex> q, std::vector<Complex> P, Complex hbar, const Lattice& lat,
                         Complex q_inf = 0.0);

    // sizes and pairwise distinctness of positions
    void validate() const;
};

struct SpinFraming {
    CMatrix U0;   // n x k
    CMatrix V0;   // k x n
    CMatrix Uinf; // n x k
    CMatrix Vinf; // k x n

    Eigen::Index k() const { return U0.cols(); }

    static SpinFraming unit(std::size_t n);
    // f_{a,b} = (U0 V0)_{a,b} (Uinf Vinf)_{b,a}
    CMatrix coupling() const;
};

struct CMConfig {
    std::vector<Complex> q;
    std::vector<Complex> p;
    Complex g{};
    Lattice lat = Lattice::rational();

    std::size_t n() const { return q.size(); }
    void validate() const;
};

struct LaxParams {
    double m = 1.0;
    double c = 1.0;
    Complex nu{};
    Complex kappa{};
};

enum class RootNormalization { Principal, Absorbed };

struct RuijsenaarsLax {
    SpectralMatrix L;
    bool branch_warning = false;
};

// theta[1/2 - j/n; 1/2](z - n <lam, eps_bar_k> | n tau), arguments in units of omega1
Complex intertwining_vector(const std::vector<Complex>& lam, int j, std::size_t k, Complex z, const Lattice& lat);

// Xi(z)_{j,k} with positions as the lambda vector, anchored at q_inf
SpectralMatrix xi_matrix(const RSConfig& conf, Complex z);

// xi_matrix with the column gauge exp((eta/n)(z - q_inf - n qbar_k)^2)
SpectralMatrix xi_sigma_matrix(const RSConfig& conf, Complex z);

SpectralMatrix hasegawa_lax(const RSConfig& conf, Complex z);

// diag(e^P) Xi_s(z + q_inf)^{-1} Xi_s(z + q_inf + n hbar)
SpectralMatrix composition_lax(const RSConfig& conf, Complex z);

RuijsenaarsLax ruijsenaars_lax(const RSConfig& conf, const LaxParams& params, Complex lambda,
                               RootNormalization norm = RootNormalization::Principal);

// rapidities P for which hasegawa_lax(z = lambda - mu, hbar = mu) has the spectrum of
// ruijsenaars_lax(lambda) times sigma(z + mu)/sigma(z)
std::vector<Complex> ruijsenaars_to_hasegawa_rapidities(const RSConfig& conf,
                                                        RootNormalization norm = RootNormalization::Principal);

SpectralMatrix krichever_lax(const RSConfig& conf, Complex z, Complex lambda);

SpectralMatrix spin_lax(const RSConfig& conf, const SpinFraming& spin, Complex z);

// lambda = nullopt drops the spectral term (rational kind only)
SpectralMatrix cm_lax(const CMConfig& conf, std::optional<Complex> lambda);

// diag(p) + n Xi_s^{-1} Xi_s' at z + q_inf
SpectralMatrix factorized_cm_lax(const CMConfig& conf, Complex z, Complex q_inf = 0.0);

// sum p^2 / 2 + g^2 sum_{i<j} wp(q_i - q_j)
Complex cm_hamiltonian(const CMConfig& conf);

} // namespace rslax
