// Shared primitives: arbitrary-precision integers, source spans, diagnostics.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace act {

using BigInt = boost::multiprecision::cpp_int;
using Addr = std::uint64_t;

// Integer division truncating toward zero, with div-by-zero yielding 0.
inline BigInt div0(const BigInt& a, const BigInt& b) {
  if (b == 0) return 0;
  return a / b;  // cpp_int division truncates toward zero
}

// Remainder with the dividend's sign, mod-by-zero yielding 0.
inline BigInt mod0(const BigInt& a, const BigInt& b) {
  if (b == 0) return 0;
  return a % b;
}

struct Span {
  int line = 0;
  int col = 0;
  bool valid() const { return line > 0; }
};

enum class Severity { Error, Warning, Note };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  std::string file;
  Span span;
  std::string rule;  // violated judgment, empty when not applicable

  std::string render() const;
};

std::string render_diagnostics(const std::vector<Diagnostic>& ds);

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

// Heap box with deep-copy semantics, for recursive AST nodes.
template <class T>
class Box {
 public:
  Box(T value) : p_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& o) : p_(std::make_unique<T>(*o.p_)) {}
  Box(Box&& o) noexcept = default;
  Box& operator=(const Box& o) {
    p_ = std::make_unique<T>(*o.p_);
    return *this;
  }
  Box& operator=(Box&& o) noexcept = default;

  T& operator*() { return *p_; }
  const T& operator*() const { return *p_; }
  T* operator->() { return p_.get(); }
  const T* operator->() const { return p_.get(); }

 private:
  std::unique_ptr<T> p_;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// FNV-1a, used for state fingerprints and obligation hashes. Stable across
// platforms, unlike std::hash.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v);

}  // namespace act
