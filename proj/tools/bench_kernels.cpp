// Times the OpenMP kernels against the serial reference implementations and
// checks they agree. Usage: bench_kernels [lmax]
#include <chrono>
#include <cstdio>

#include "ghat/parallel.hpp"
#include "ghat/reference.hpp"
#include "ghat/rng.hpp"

using namespace ghat;

namespace {

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

double field_dev(const Field& a, const Field& b) {
  double d = 0.0;
  for (int p = 0; p < a.dual()->size(); ++p)
    if (a.valid(p) && b.valid(p)) d = std::max(d, (a.at(p) - b.at(p)).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  const int lmax = argc > 1 ? std::atoi(argv[1]) : 10;
  const GroupDescriptor G = GroupDescriptor::su2();
  const double band = 0.25 * double(lmax) * double(lmax + 2);
  const DualPtr dual = Dual::make(G, band);
  const RulePtr rule = haar_quadrature(G, lmax);
  std::printf("group su2, lmax %d, %d irreps, %ld nodes, %d threads\n", lmax, dual->size(),
              rule->size(), num_threads());

  const Field sym = random_symbol(dual, 1, 7, 1.0);
  const GridFunction f = inverse_transform(sym, rule);

  Field fwd_p, fwd_s;
  const double t_fwd_p = time_best_of(3, [&] { fwd_p = forward_transform(f, dual); });
  const double t_fwd_s = time_best_of(3, [&] { fwd_s = ref::forward_transform(f, dual); });

  GridFunction inv_p, inv_s;
  const double t_inv_p = time_best_of(3, [&] { inv_p = inverse_transform(sym, rule); });
  const double t_inv_s = time_best_of(3, [&] { inv_s = ref::inverse_transform(sym, rule); });

  Mat gram_p, gram_s;
  const double t_gram_p = time_best_of(1, [&] { gram_p = pw_gram(dual, rule); });
  const double t_gram_s = time_best_of(1, [&] { gram_s = ref::pw_gram(dual, rule); });

  Field del_p, del_s;
  const double t_del_p = time_best_of(3, [&] { del_p = delta(0, sym); });
  const double t_del_s = time_best_of(3, [&] { del_s = ref::delta(0, sym); });

  double inv_dev = 0.0;
  for (long k = 0; k < inv_p.values.size(); ++k)
    inv_dev = std::max(inv_dev, std::abs(inv_p.values(k) - inv_s.values(k)));

  std::printf("%-18s %12s %12s %8s %10s\n", "kernel", "omp [s]", "serial [s]", "speedup",
              "max dev");
  std::printf("%-18s %12.4f %12.4f %8.2f %10.2e\n", "forward", t_fwd_p, t_fwd_s,
              t_fwd_s / t_fwd_p, field_dev(fwd_p, fwd_s));
  std::printf("%-18s %12.4f %12.4f %8.2f %10.2e\n", "inverse", t_inv_p, t_inv_s,
              t_inv_s / t_inv_p, inv_dev);
  std::printf("%-18s %12.4f %12.4f %8.2f %10.2e\n", "pw_gram", t_gram_p, t_gram_s,
              t_gram_s / t_gram_p, (gram_p - gram_s).cwiseAbs().maxCoeff());
  std::printf("%-18s %12.4f %12.4f %8.2f %10.2e\n", "delta", t_del_p, t_del_s,
              t_del_s / t_del_p, field_dev(del_p, del_s));
  return 0;
}
