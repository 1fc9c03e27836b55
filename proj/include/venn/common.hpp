#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace venn {

// Bit i set <=> membership in set i. At most 10 sets, so 10 bits are used.
using Mask = std::uint32_t;

inline constexpr int kMinSets = 2;
inline constexpr int kMaxSets = 10;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct Rgba {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  std::uint8_t a = 255;

  friend bool operator==(const Rgba&, const Rgba&) = default;

  // Accepts #RRGGBB or #RRGGBBAA (case-insensitive hex).
  static Rgba parse(std::string_view text);
  // #RRGGBB, uppercase; alpha is not included.
  std::string hex() const;
  double opacity() const { return a / 255.0; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input/validation failures (bad set counts, empty sets, name collisions, bad colors).
class InputError : public Error {
 public:
  using Error::Error;
};

// Numeric preconditions violated (non-positive radius, segment counts, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InfeasibleOverlapError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class RenderError : public Error {
 public:
  using Error::Error;
};

// Fixed-point formatting independent of the global locale.
std::string format_fixed(double value, int decimals = 6);

int popcount(Mask m);

}  // namespace venn
