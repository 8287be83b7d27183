#include "heatdr/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "heatdr/error.hpp"

namespace heatdr {

std::vector<Real> Axis::values() const {
  if (points < 1) fail(Errc::BadParameter, "grid axis needs at least one point");
  std::vector<Real> v(points);
  if (points == 1) {
    v[0] = min;
    return v;
  }
  for (int i = 0; i < points; ++i) {
    const Real f = Real(i) / (points - 1);
    v[i] = log ? min * pow(max / min, f)
               : min + f * (max - min);
  }
  v.front() = min;
  v.back() = max;
  return v;
}

Axis Axis::refined() const {
  Axis a = *this;
  a.points = points > 1 ? 2 * points - 1 : 1;
  return a;
}

GridSpec standard_grid() {
  return GridSpec{Axis{Real("0.01"), Real(20), 96, true}, Axis{Real("0.05"), Real(5), 12, true}};
}

GridSpec refined(const GridSpec& g) { return GridSpec{g.r.refined(), g.t.refined()}; }

void check_grid(const GridSpec& g) {
  for (const Axis* a : {&g.r, &g.t}) {
    if (a->points < 1) fail(Errc::BadParameter, "grid axis is empty");
    if (!(a->min > 0) || a->max < a->min) fail(Errc::BadParameter, "grid axis needs 0 < min <= max");
  }
}

void summarize(BoundReport& rep) {
  if (rep.rows.empty()) fail(Errc::RegionEmpty, rep.name + ": no grid points");
  bool first = true;
  for (const auto& row : rep.rows) {
    const Real q = abs(row.ratio);
    if (first || q > rep.sup_ratio) {
      rep.sup_ratio = q;
      rep.sup_r = row.r;
      rep.sup_t = row.t;
    }
    if (first || q < rep.inf_ratio) {
      rep.inf_ratio = q;
      rep.inf_r = row.r;
      rep.inf_t = row.t;
    }
    first = false;
  }
}

std::string to_csv(const BoundReport& rep) {
  std::ostringstream out;
  out << "r,t,lhs,rhs,ratio\n";
  for (const auto& row : rep.rows)
    out << format_real(row.r) << ',' << format_real(row.t) << ',' << format_real(row.lhs) << ','
        << format_real(row.rhs) << ',' << format_real(row.ratio) << '\n';
  return out.str();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HEATDR_THREADS")) {
    const int w = std::atoi(env);
    if (w > 0) workers = static_cast<unsigned>(w);
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace heatdr
