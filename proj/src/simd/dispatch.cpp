#include <atomic>

#include "cvqr/simd/kernels.hpp"

namespace cvqr::simd {
namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* usable_avx2() {
  const KernelTable* table = detail::avx2_kernels();
  return (table != nullptr && cpu_has_avx2_fma()) ? table : nullptr;
}

const KernelTable& select_kernels() {
  if (const KernelTable* table = usable_avx2(); table != nullptr) return *table;
  if (const KernelTable* table = detail::neon_kernels(); table != nullptr) return *table;
  return scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&select_kernels()};
  return slot;
}

}  // namespace

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_relaxed); }

void set_active_kernels(const KernelTable& table) { active_slot().store(&table, std::memory_order_relaxed); }

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* table = usable_avx2(); table != nullptr) out.push_back(table);
  if (const KernelTable* table = detail::neon_kernels(); table != nullptr) out.push_back(table);
  return out;
}

const KernelTable* find_kernels(std::string_view name) {
  for (const KernelTable* table : available_kernels()) {
    if (table->name == name) return table;
  }
  return nullptr;
}

}  // namespace cvqr::simd
