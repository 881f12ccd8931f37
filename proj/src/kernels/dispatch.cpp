#include <cstdlib>
#include <string_view>

#include "ssns/kernels.hpp"

namespace ssns::kernels {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SSNS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* table(Isa isa) {
  if (!cpu_supports(isa)) return nullptr;
  switch (isa) {
    case Isa::scalar:
      return &detail::scalar_table;
    case Isa::avx2:
#if defined(SSNS_HAVE_AVX2)
      return &detail::avx2_table;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

namespace {
const KernelTable& choose() {
  if (const char* env = std::getenv("SSNS_KERNELS")) {
    if (std::string_view(env) == "scalar") return detail::scalar_table;
  }
  if (const KernelTable* t = table(Isa::avx2)) return *t;
  return detail::scalar_table;
}
}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = choose();
  return chosen;
}

}  // namespace ssns::kernels
