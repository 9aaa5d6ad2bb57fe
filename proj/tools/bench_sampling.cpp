// Compares the OpenMP sampling path against the serial reference on a
// large transcendental residual and checks that the verdicts agree.
#include "jtk/zero.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    using namespace jtk;
    using clock = std::chrono::steady_clock;

    Chart chart({"x", "y", "z"});
    // sin^2 + cos^2 - 1, padded with exp/polynomial noise that cancels.
    Expr e = parse_expr(
        "sin(x*y + z)^2 + cos(x*y + z)^2 - 1 + exp(x + y) - exp(x)*exp(y) + "
        "(x + y + z)^3 - x^3 - y^3 - z^3 - 3*(x^2*y + x^2*z + y^2*x + y^2*z + "
        "z^2*x + z^2*y) - 6*x*y*z",
        chart);

    SampleConfig cfg;
    cfg.samples = argc > 1 ? std::atoi(argv[1]) : 200000;
    cfg.seed = 42;

    auto t0 = clock::now();
    ZeroVerdict serial = is_zero_sampled_serial(e, chart, cfg);
    auto t1 = clock::now();
    ZeroVerdict parallel = is_zero_sampled(e, chart, cfg);
    auto t2 = clock::now();

    auto ms = [](auto a, auto b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    double ts = ms(t0, t1), tp = ms(t1, t2);
    std::cout << "samples:  " << cfg.samples << '\n';
    std::cout << "serial:   " << ts << " ms  [" << serial.describe() << "]\n";
    std::cout << "parallel: " << tp << " ms  [" << parallel.describe()
              << "]\n";
    std::cout << "speedup:  " << (tp > 0 ? ts / tp : 0.0) << "x\n";

    bool agree = serial.kind == parallel.kind &&
                 serial.samples == parallel.samples &&
                 serial.max_residual == parallel.max_residual;
    std::cout << "verdicts " << (agree ? "agree" : "DISAGREE") << '\n';
    return agree ? 0 : 1;
}
