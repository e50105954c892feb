#include <atomic>
#include <string>

#include "sdfem/error.hpp"
#include "sdfem/kernels/kernels.hpp"

namespace sdfem::kernels {
namespace {

const Table* lookup(Backend b) {
  switch (b) {
    case Backend::Scalar: return &scalar::kTable;
    case Backend::Avx2:
#if defined(SDFEM_HAVE_AVX2_TU)
      return avx2::cpu_supported() ? &avx2::kTable : nullptr;
#else
      return nullptr;
#endif
    case Backend::Neon:
#if defined(SDFEM_HAVE_NEON_TU)
      return &neon::kTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend detect() {
  if (lookup(Backend::Avx2) != nullptr) return Backend::Avx2;
  if (lookup(Backend::Neon) != nullptr) return Backend::Neon;
  return Backend::Scalar;
}

struct State {
  std::atomic<Backend> backend{detect()};
  std::atomic<const Table*> table{lookup(backend.load())};
};

State& state() {
  static State s;
  return s;
}

const Table& active() { return *state().table.load(std::memory_order_acquire); }

void check_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ConfigError(std::string("kernels: size mismatch in ") + what);
}

}  // namespace

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "?";
}

bool available(Backend b) { return lookup(b) != nullptr; }

Backend active_backend() { return state().backend.load(); }

void set_backend(Backend b) {
  const Table* t = lookup(b);
  if (t == nullptr) {
    throw ConfigError("kernels: backend '" + std::string(to_string(b)) + "' is not available on this machine");
  }
  state().backend.store(b);
  state().table.store(t, std::memory_order_release);
}

const Table& table(Backend b) {
  const Table* t = lookup(b);
  if (t == nullptr) {
    throw ConfigError("kernels: backend '" + std::string(to_string(b)) + "' is not available on this machine");
  }
  return *t;
}

double weighted_sum(std::span<const double> w, std::span<const double> a) {
  check_sizes(w.size(), a.size(), "weighted_sum");
  return active().weighted_sum(w.data(), a.data(), w.size());
}

double weighted_abs_sum(std::span<const double> w, std::span<const double> a) {
  check_sizes(w.size(), a.size(), "weighted_abs_sum");
  return active().weighted_abs_sum(w.data(), a.data(), w.size());
}

double weighted_sq_sum(std::span<const double> w, std::span<const double> a) {
  check_sizes(w.size(), a.size(), "weighted_sq_sum");
  return active().weighted_sq_sum(w.data(), a.data(), w.size());
}

double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  check_sizes(w.size(), a.size(), "weighted_dot");
  check_sizes(w.size(), b.size(), "weighted_dot");
  return active().weighted_dot(w.data(), a.data(), b.data(), w.size());
}

double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }

void stencil9_apply(const Stencil9View& op, std::span<const double> x_padded, std::span<double> y) {
  const std::size_t rows = op.n * op.n;
  check_sizes(x_padded.size(), rows + 2 * stencil_padding(op.n), "stencil9_apply input");
  check_sizes(y.size(), rows, "stencil9_apply output");
  active().stencil9_apply(op, x_padded.data(), y.data());
}

}  // namespace sdfem::kernels
