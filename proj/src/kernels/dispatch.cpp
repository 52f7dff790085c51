#include <atomic>
#include <cstdlib>
#include <string>

#include "whitney/kernels.hpp"

namespace whitney::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(WHITNEY_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* pick_default() {
  const auto tables = available();
  if (const char* forced = std::getenv("WHITNEY_KERNELS")) {
    for (const KernelTable* t : tables) {
      if (t->name == forced) return t;
    }
  }
  return tables.back();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

}  // namespace

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> tables{&scalar_kernels()};
#if defined(WHITNEY_BUILD_AVX2)
  if (cpu_has_avx2()) tables.push_back(&avx2_kernels());
#endif
#if defined(WHITNEY_BUILD_NEON)
  tables.push_back(&neon_kernels());
#endif
  return tables;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  for (const KernelTable* t : available()) {
    if (t->name == name) {
      current().store(t, std::memory_order_release);
      return true;
    }
  }
  return false;
}

double pairwise_dot(std::span<const double> w, std::span<const double> f) {
  constexpr std::size_t kLeaf = 64;
  const std::size_t n = w.size() < f.size() ? w.size() : f.size();
  if (n <= kLeaf) return active().dot(w.data(), f.data(), n);
  const std::size_t half = n / 2;
  return pairwise_dot(w.first(half), f.first(half)) +
         pairwise_dot(w.subspan(half, n - half), f.subspan(half, n - half));
}

}  // namespace whitney::kernels
