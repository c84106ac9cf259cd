#include "dyncert/io/json_io.hpp"

#include <fstream>
#include <sstream>

#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"

namespace dyncert::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw DynError(Errc::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::size_t count_of(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

shifts::Word word_of(const json& j) {
  if (!j.is_array()) bad("words are arrays of integers");
  shifts::Word w;
  for (const auto& s : j) w.push_back(static_cast<shifts::Symbol>(count_of(s, "symbol")));
  return w;
}

std::vector<shifts::Word> words_of(const json& j) {
  if (!j.is_array()) bad("expected an array of words");
  std::vector<shifts::Word> out;
  for (const auto& w : j) out.push_back(word_of(w));
  return out;
}

mpq_class rational_of(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long long>())));
  bad("rationals are written as strings \"p/q\" or integers");
}

std::string str(const mpq_class& q) { return rational_string(q); }

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    bad("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DynError(Errc::InvalidArgument, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json_file(const std::string& path) { return parse_json(read_file(path)); }

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DynError(Errc::InvalidArgument, "cannot write " + path);
  out << bytes;
  if (!out) throw DynError(Errc::InvalidArgument, "cannot write " + path);
}

Presentation parse_presentation(const json& j) {
  if (!j.is_object()) bad("presentation must be a JSON object");
  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    if (!m.is_array()) bad("\"matrix\" must be an array of rows");
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& r : m) {
      if (!r.is_array()) bad("matrix rows must be arrays");
      std::vector<std::uint32_t> row;
      for (const auto& v : r) row.push_back(static_cast<std::uint32_t>(count_of(v, "matrix entry")));
      rows.push_back(std::move(row));
    }
    try {
      return shifts::NonnegMatrix::from_rows(rows);
    } catch (const DynError& e) {
      bad(e.what());
    }
  }
  if (j.contains("vertices")) {
    shifts::LabeledGraph g;
    g.vertices = count_of(j.at("vertices"), "\"vertices\"");
    std::size_t max_label = 0;
    for (const auto& e : field(j, "edges")) {
      shifts::LabeledEdge edge{count_of(field(e, "from"), "\"from\""), count_of(field(e, "to"), "\"to\""),
                               static_cast<shifts::Symbol>(count_of(field(e, "label"), "\"label\""))};
      max_label = std::max<std::size_t>(max_label, edge.label + 1);
      g.edges.push_back(edge);
    }
    g.alphabet = j.contains("alphabet") ? count_of(j.at("alphabet"), "\"alphabet\"") : std::max<std::size_t>(max_label, 1);
    return g;
  }
  if (j.contains("generators")) {
    shifts::GeneratingSet g;
    g.alphabet = count_of(field(j, "alphabet"), "\"alphabet\"");
    g.generators = words_of(j.at("generators"));
    if (j.contains("unique_representation")) {
      if (!j.at("unique_representation").is_boolean()) bad("\"unique_representation\" must be a boolean");
      g.unique_representation_asserted = j.at("unique_representation").get<bool>();
    }
    return g;
  }
  if (j.contains("forbidden")) {
    shifts::ForbiddenSetSFT x;
    x.alphabet = count_of(field(j, "alphabet"), "\"alphabet\"");
    x.forbidden = words_of(j.at("forbidden"));
    return x;
  }
  bad("unrecognized presentation: expected \"forbidden\", \"matrix\", \"edges\" or \"generators\"");
}

json to_json(const Presentation& p) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, shifts::ForbiddenSetSFT>) {
          return {{"alphabet", v.alphabet}, {"forbidden", v.forbidden}};
        } else if constexpr (std::is_same_v<T, shifts::NonnegMatrix>) {
          return {{"matrix", v.rows()}};
        } else if constexpr (std::is_same_v<T, shifts::LabeledGraph>) {
          json edges = json::array();
          for (const auto& e : v.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
          return {{"vertices", v.vertices}, {"alphabet", v.alphabet}, {"edges", edges}};
        } else {
          return {{"alphabet", v.alphabet},
                  {"generators", v.generators},
                  {"unique_representation", v.unique_representation_asserted}};
        }
      },
      p);
}

json entropy_json(const shifts::EntropyResult& r, bool nats) {
  mpq_class lo = r.lo;
  mpq_class hi = r.hi;
  if (!nats) {
    lo = lo / log_upper(2).to_rational();
    hi = hi / log_lower(2).to_rational();
  }
  return {{"lo", to_double_down(lo)},
          {"hi", to_double_up(hi)},
          {"lo_exact", str(lo)},
          {"hi_exact", str(hi)},
          {"status", shifts::status_name(r.status)},
          {"nats", nats}};
}

MeasureFile parse_measure(const json& j) {
  MeasureFile out;
  if (j.contains("metric")) {
    if (!j.at("metric").is_string()) bad("\"metric\" must be a string");
    out.metric = measures::parse_metric(j.at("metric").get<std::string>());
  }
  const auto& atoms = field(j, "atoms");
  if (!atoms.is_array() || atoms.empty()) bad("\"atoms\" must be a non-empty array");
  std::vector<measures::Atom> list;
  for (const auto& a : atoms) {
    measures::Atom atom;
    atom.point.re = rational_of(field(a, "x"));
    atom.point.im = a.contains("y") ? rational_of(a.at("y")) : mpq_class(0);
    atom.weight = rational_of(field(a, "w"));
    list.push_back(std::move(atom));
  }
  out.measure = measures::DiscreteMeasure::from_atoms(std::move(list));
  return out;
}

json measure_json(const measures::DiscreteMeasure& mu, measures::MetricKind metric) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) {
    atoms.push_back({{"x", str(a.point.re)}, {"y", str(a.point.im)}, {"w", str(a.weight)}});
  }
  return {{"metric", measures::metric_name(metric)}, {"atoms", atoms}};
}

json w1_json(const measures::W1Result& r) {
  json flows = json::array();
  for (const auto& f : r.plan.flows) flows.push_back({{"from", f.source}, {"to", f.target}, {"mass", str(f.mass)}});
  return {{"value", to_double_nearest(r.value)},
          {"error", to_double_up(r.error)},
          {"lo", to_double_down(r.value - r.error)},
          {"hi", to_double_up(r.value + r.error)},
          {"value_exact", str(r.value)},
          {"error_exact", str(r.error)},
          {"closed_form", r.closed_form},
          {"plan", flows}};
}

json box_json(const ComplexBox& b) {
  return {{"re", {str(b.re().lo().to_rational()), str(b.re().hi().to_rational())}},
          {"im", {str(b.im().lo().to_rational()), str(b.im().hi().to_rational())}},
          {"center", {b.re().midpoint().to_double(), b.im().midpoint().to_double()}}};
}

json periodic_json(const std::vector<complex::PeriodicPointReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) {
    out.push_back({{"period", r.period},
                   {"point", box_json(r.point)},
                   {"multiplier", box_json(r.multiplier)},
                   {"class", complex::periodic_class_name(r.cls)},
                   {"isolated", r.isolated}});
  }
  return out;
}

json bryuno_json(const complex::BryunoReport& r) {
  json a = json::array();
  json q = json::array();
  for (const auto& v : r.partial_quotients) a.push_back(v.get_str());
  for (const auto& v : r.denominators) q.push_back(v.get_str());
  return {{"partial_quotients", a},
          {"denominators", q},
          {"partial_sums", r.partial_sums},
          {"precision_used", r.precision_used}};
}

json separated_json(const metric::SeparatedSetReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back(str(x));
  return {{"n", r.n}, {"eps", str(r.eps)}, {"grid", r.grid}, {"count", r.count}, {"witnesses", w}};
}

json katok_json(const metric::KatokBrinReport& r, const mpq_class& eps, std::size_t n) {
  return {{"eps", str(eps)}, {"n", n}, {"hits", r.hits}, {"trials", r.trials}, {"estimate", r.estimate}};
}

}  // namespace dyncert::io
