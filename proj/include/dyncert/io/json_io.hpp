#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "dyncert/complex/bl_measure.hpp"
#include "dyncert/complex/periodic.hpp"
#include "dyncert/measures/transport.hpp"
#include "dyncert/metric/estimators.hpp"
#include "dyncert/shifts/coded.hpp"
#include "dyncert/shifts/presentation.hpp"

namespace dyncert::io {

using json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError with line and column.
json parse_json(const std::string& text);
json read_json_file(const std::string& path);
std::string read_file(const std::string& path);
/// Writes bytes as is; throws InvalidArgument when the file cannot be written.
void write_file(const std::string& path, const std::string& bytes);

using Presentation =
    std::variant<shifts::ForbiddenSetSFT, shifts::NonnegMatrix, shifts::LabeledGraph, shifts::GeneratingSet>;

/// Recognizes the four shift formats by their keys. Throws ParseError.
Presentation parse_presentation(const json& j);
json to_json(const Presentation& p);

/// Entropy interval; values are converted to bits when nats is false.
json entropy_json(const shifts::EntropyResult& r, bool nats);

struct MeasureFile {
  measures::DiscreteMeasure measure;
  measures::MetricKind metric = measures::MetricKind::Planar;
};
/// {"atoms": [{"x": "p/q", "y": "p/q", "w": "p/q"}], "metric": "..."}.
/// Throws ParseError, InfeasibleWeights.
MeasureFile parse_measure(const json& j);
json measure_json(const measures::DiscreteMeasure& mu, measures::MetricKind metric);

/// Value, error and the plan as an edge list {"from", "to", "mass"}.
json w1_json(const measures::W1Result& r);

json periodic_json(const std::vector<complex::PeriodicPointReport>& reports);
json bryuno_json(const complex::BryunoReport& r);
json separated_json(const metric::SeparatedSetReport& r);
json katok_json(const metric::KatokBrinReport& r, const mpq_class& eps, std::size_t n);
json box_json(const ComplexBox& b);

}  // namespace dyncert::io
