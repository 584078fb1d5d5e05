// Compares the OpenMP-parallel kernels against the serial reference loop on
// the two hot paths: residual sweeps of the period function and assembly of
// the transfer-operator disc.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "lewisper/lewis.hpp"
#include "lewisper/maass.hpp"
#include "lewisper/parallel.hpp"
#include "lewisper/transfer.hpp"

using namespace lewisper;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

maass::MaassForm synthetic_form() {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::map<int, Vec> coeffs;
    for (int k = 1; k <= 18; ++k) {
        Vec v(1);
        v[0] = cplx(unif(rng), unif(rng)) * std::pow(0.4, k);
        coeffs[k] = v;
        coeffs[-k] = -v;
    }
    return maass::make_form(spectral(cplx(0.3, 0.0)), finrep::trivial_rep(), coeffs);
}

}  // namespace

int main() {
    const auto form = synthetic_form();
    const auto pf = lewis::make_period_function(
        lewis::boundary_data(form, lewis::DataMode::DirectEverywhere), 0);
    const auto grid = lewis::standard_grid();

    // Residual sweep: parallel_for vs serial_for over the same work items.
    auto sweep = [&](auto&& loop) {
        std::vector<double> res(grid.size());
        loop(grid.size(), [&](std::size_t i) {
            res[i] = lewis::lewis_residual(pf, {grid[i]});
        });
        double worst = 0.0;
        for (double r : res) worst = std::max(worst, r);
        return worst;
    };
    double t0 = now_ms();
    const double serial_worst =
        sweep([](std::size_t n, auto&& f) { serial_for(n, f); });
    double t1 = now_ms();
    const double parallel_worst =
        sweep([](std::size_t n, auto&& f) { parallel_for(n, f); });
    double t2 = now_ms();
    std::printf("residual sweep: serial %.1f ms, parallel %.1f ms (threads=%d), "
                "max residual %.3e / %.3e\n",
                t1 - t0, t2 - t1, thread_count(), serial_worst, parallel_worst);

    // Disc assembly (parallel over circle samples internally).
    t0 = now_ms();
    const auto disc = transfer::make_disc(transfer::Kind::Linf, spectral(0.75),
                                          finrep::trivial_rep(), 40);
    t1 = now_ms();
    std::printf("disc assembly: %.1f ms, matrix %ldx%ld\n", t1 - t0,
                static_cast<long>(disc.matrix.rows()),
                static_cast<long>(disc.matrix.cols()));
    return 0;
}
