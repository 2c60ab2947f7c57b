// Classify a matrix, compute its Cesaro limit both ways, then build a matrix
// whose limit is a chosen positive operator.

#include <iostream>

#include "cesaro/cesaro.hpp"

int main()
{
    using namespace cesaro;

    Matrix t(2, 2);
    t << 1.0, -1.1547005383792517, 0.0, -1.0;  // involution with eigenvectors at 60 degrees
    const PowerboundReport rep = classify(t);
    std::cout << "verdict: " << to_string(rep.verdict) << ", class " << class_label(rep).name() << '\n';

    const AsymptoticLimit lim = cesaro_limit(rep);
    std::cout << "closed-form limit:\n" << lim.A << '\n';
    std::cout << "mean of 10000 terms:\n" << cesaro_iterate(t, 10000) << '\n';
    std::cout << "norm limit exists: " << std::boolalpha << norm_limit_exists(rep) << '\n';

    const SpectrumTarget target{3, {3.0, 3.0}};
    const SynthesisResult res = synthesize(target);
    std::cout << "synthesized T for eigenvalues {3, 3, 0}:\n" << res.T << '\n';
    std::cout << "its limit:\n" << cesaro_limit(res.T).A << '\n';

    const auto trace = shift::evaluate(shift::ShiftRule::example(1), 6561);
    std::cout << "weighted shift, Cesaro mean at n = 6561: " << trace.cesaro_at(6561) << '\n';
    return 0;
}
