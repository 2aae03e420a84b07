// Walks through the library surface: building series, distances, edit paths, matrices and PWCA.

#include <cstdio>
#include <vector>

#include "twed/twed.hpp"

int main() {
  using namespace twed;

  // Two irregularly sampled 2-d series.
  const TimeSeries a = make_series({{0.0, {0.0, 1.0}}, {0.5, {0.4, 1.2}}, {2.0, {1.5, 0.9}}, {2.5, {1.4, 0.2}}});
  const TimeSeries b = make_series({{0.0, {0.1, 1.0}}, {1.0, {0.8, 1.1}}, {2.5, {1.5, 0.3}}});

  const TwedParams params(1.0, 0.001, Norm::L2);
  std::printf("twed(a, b) = %.15g\n", twed::twed(a, b, params));
  std::printf("twed(b, a) = %.15g\n", twed::twed(b, a, params));

  // Stiffer time axis: shifting samples in time now costs more.
  std::printf("gamma = 1   -> %.15g\n", twed::twed(a, b, TwedParams(1.0, 1.0, Norm::L2)));

  const Alignment al = twed_with_path(a, b, params);
  std::printf("\noptimal edit path (%zu steps):\n", al.path.steps.size());
  for (const auto& s : al.path.steps) {
    std::printf("  %-8s i=%zu j=%zu cost=%.6g\n", std::string(to_string(s.op)).c_str(), s.i, s.j, s.cost);
  }

  // Flat row-major buffers, as handed over by foreign callers.
  const std::vector<double> values{0.0, 1.0, 0.4, 1.2};
  const std::vector<double> times{0.0, 0.5};
  const TimeSeries c = TimeSeries::from_buffers(values, times, 2);

  const std::vector<TimeSeries> set{a, b, c};
  const DistanceMatrix m = distance_matrix(set, params, 2);
  std::printf("\ndistance matrix:\n%s", format_matrix_csv(m).c_str());

  // Piecewise constant approximation of a scalar series and the distance bound it satisfies.
  const std::vector<double> t{1, 2, 3, 4, 5, 6};
  const std::vector<double> v{0.1, 0.0, 2.1, 1.9, 2.0, -1.0};
  const TimeSeries x = make_scalar_series(t, v);
  const TwedParams pwca_params(1.0, 0.5, Norm::L2);
  std::printf("\nr  sse        distance   bound\n");
  for (const auto& res : pwca_sweep(x)) {
    const auto check = check_pwca_result(res, pwca_params);
    std::printf("%zu  %-9.4g  %-9.4g  %.4g\n", res.segments.size(), res.sse, check.distance, check.bound);
  }
  return 0;
}
