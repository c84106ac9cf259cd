#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyncert/complex/poly.hpp"

namespace dyncert::complex {

enum class BoxClass : std::uint8_t { Escaping, Unknown, Interior };

/// Square grid of side-2^-r boxes covering the window [-R, R]^2. Row 0 is the
/// top row (largest imaginary part), column 0 the leftmost.
struct BoxGrid {
  int resolution = 0;  // r
  Dyadic half_width;   // R, a multiple of 2^-r
  std::size_t side = 0;
  std::vector<BoxClass> cls;        // side * side, row major
  std::vector<std::int32_t> steps;  // escape step for Escaping boxes, -1 otherwise

  std::size_t index(std::size_t row, std::size_t col) const { return row * side + col; }
  BoxClass at(std::size_t row, std::size_t col) const { return cls[index(row, col)]; }
  ComplexBox box(std::size_t row, std::size_t col) const;
  /// Box side 2^-r and window corner as doubles (both exact).
  double cell() const;
  double corner() const;

  std::size_t count(BoxClass c) const;
  /// Fraction of Unknown boxes with both an Escaping and an Interior neighbour
  /// (8-neighbourhood). Measures how thin the undecided layer is.
  double boundary_fraction() const;
};

struct JuliaOptions {
  int resolution = 8;
  int max_iter = 64;
  /// Longest attracting cycle searched for interior certificates.
  int trap_period = 4;
  bool parallel = true;
};

/// Escape-certified approximation of the filled Julia set. Every box is
/// iterated in outward-rounded double interval arithmetic; it is Escaping once
/// its image lies outside |z| >= escape_radius(f), Interior once its image lies
/// inside a verified trap of an attracting cycle, and Unknown otherwise.
BoxGrid filled_julia_approx(const PolySpec& f, const JuliaOptions& options = {});

/// Same classification rule in multiprecision dyadic box arithmetic at
/// absolute precision 2^-bits, evaluated serially. Slow; used to cross-check.
BoxGrid filled_julia_reference(const PolySpec& f, const JuliaOptions& options, long bits = 80);

/// Binary PGM: Escaping = 255, Unknown = 128, Interior = 0.
std::string grid_pgm(const BoxGrid& grid);
/// {window, resolution, counts, boundary_fraction}.
nlohmann::json grid_json(const BoxGrid& grid, const PolySpec& f);

}  // namespace dyncert::complex
