#include "ghat/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ghat {

using nlohmann::json;

void JsonWriter::comma() {
  if (pending_value_) {
    pending_value_ = false;
    return;
  }
  if (!need_comma_.empty()) {
    if (need_comma_.back()) out_ += ",";
    need_comma_.back() = true;
  }
}

void JsonWriter::begin_object() {
  comma();
  out_ += "{";
  need_comma_.push_back(false);
}

void JsonWriter::end_object() {
  out_ += "}";
  need_comma_.pop_back();
}

void JsonWriter::begin_array() {
  comma();
  out_ += "[";
  need_comma_.push_back(false);
}

void JsonWriter::end_array() {
  out_ += "]";
  need_comma_.pop_back();
}

void JsonWriter::key(const std::string& k) {
  comma();
  out_ += "\"" + k + "\":";
  pending_value_ = true;
}

void JsonWriter::value(const std::string& v) {
  comma();
  out_ += "\"";
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      default: out_ += c;
    }
  }
  out_ += "\"";
}

void JsonWriter::value(const char* v) { value(std::string(v)); }

std::string JsonWriter::number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::value(double v) { raw(number(v)); }
void JsonWriter::value(long v) { raw(std::to_string(v)); }
void JsonWriter::value(bool v) { raw(v ? "true" : "false"); }

void JsonWriter::raw(const std::string& r) {
  comma();
  out_ += r;
}

void group_emit(JsonWriter& w, const GroupDescriptor& G) {
  w.begin_object();
  switch (G.kind) {
    case GroupKind::Torus:
      w.kv("kind", "torus");
      w.kv("d", long(G.torus_dim));
      break;
    case GroupKind::SU2: w.kv("kind", "su2"); break;
    case GroupKind::Product:
      w.kv("kind", "product");
      w.key("factors");
      w.begin_array();
      for (const auto& f : G.factors) group_emit(w, f);
      w.end_array();
      break;
  }
  w.end_object();
}

std::string group_to_json(const GroupDescriptor& G) {
  JsonWriter w;
  group_emit(w, G);
  return w.str();
}

static GroupDescriptor group_from_nl(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw error("group json: missing kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "torus") {
    if (!j.contains("d")) throw error("group json: torus needs d");
    return GroupDescriptor::torus(j.at("d").get<int>());
  }
  if (kind == "su2") return GroupDescriptor::su2();
  if (kind == "product") {
    std::vector<GroupDescriptor> fs;
    for (const auto& f : j.at("factors")) fs.push_back(group_from_nl(f));
    return GroupDescriptor::product(std::move(fs));
  }
  throw error("group json: unknown kind " + kind);
}

GroupDescriptor group_from_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw error("group json: parse failure");
  return group_from_nl(j);
}

namespace {

// walk the descriptor tree, consuming the flat label coordinates
void label_emit_rec(JsonWriter& w, const GroupDescriptor& G, const IrrepLabel& l, size_t& tpos,
                    size_t& spos) {
  switch (G.kind) {
    case GroupKind::Torus: {
      w.begin_object();
      w.key("torus");
      w.begin_array();
      for (int i = 0; i < G.torus_dim; ++i) w.value(l.torus[tpos++]);
      w.end_array();
      w.end_object();
      break;
    }
    case GroupKind::SU2: {
      w.begin_object();
      w.kv("su2", l.su2[spos++]);
      w.end_object();
      break;
    }
    case GroupKind::Product: {
      w.begin_object();
      w.key("product");
      w.begin_array();
      for (const auto& f : G.factors) label_emit_rec(w, f, l, tpos, spos);
      w.end_array();
      w.end_object();
      break;
    }
  }
}

void label_parse_rec(const json& j, const GroupDescriptor& G, IrrepLabel& out) {
  switch (G.kind) {
    case GroupKind::Torus: {
      if (!j.contains("torus")) throw error("label json: expected torus block");
      const auto& arr = j.at("torus");
      if (static_cast<int>(arr.size()) != G.torus_dim)
        throw error("label json: torus arity mismatch");
      for (const auto& v : arr) out.torus.push_back(v.get<long>());
      break;
    }
    case GroupKind::SU2: {
      if (!j.contains("su2")) throw error("label json: expected su2 block");
      const long l = j.at("su2").get<long>();
      if (l < 0) throw error("label json: su2 label must be >= 0");
      out.su2.push_back(l);
      break;
    }
    case GroupKind::Product: {
      if (!j.contains("product")) throw error("label json: expected product block");
      const auto& arr = j.at("product");
      if (arr.size() != G.factors.size()) throw error("label json: product arity mismatch");
      for (size_t i = 0; i < arr.size(); ++i) label_parse_rec(arr[i], G.factors[i], out);
      break;
    }
  }
}

}  // namespace

void label_emit(JsonWriter& w, const GroupDescriptor& G, const IrrepLabel& l) {
  size_t t = 0, s = 0;
  label_emit_rec(w, G, l, t, s);
}

IrrepLabel label_from_json_text(const GroupDescriptor& G, const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw error("label json: parse failure");
  IrrepLabel out;
  label_parse_rec(j, G, out);
  return out;
}

std::string symbol_to_json(const Field& sigma) {
  if (sigma.word_size() != 0) throw error("symbol_to_json expects a symbol (empty word)");
  const Dual& dual = *sigma.dual();
  JsonWriter w;
  w.begin_object();
  w.key("group");
  group_emit(w, dual.group());
  w.kv("band", dual.lambda_max());
  w.kv("margin", long(sigma.margin()));
  w.key("entries");
  w.begin_array();
  for (int p = 0; p < dual.size(); ++p) {
    const Mat& m = sigma.at(p);
    if (m.squaredNorm() == 0.0 && !dual.label(p).trivial()) continue;  // implicit zeros
    w.begin_object();
    w.key("label");
    label_emit(w, dual.group(), dual.label(p));
    w.key("re");
    w.begin_array();
    for (long r = 0; r < m.rows(); ++r) {
      w.begin_array();
      for (long c = 0; c < m.cols(); ++c) w.value(m(r, c).real());
      w.end_array();
    }
    w.end_array();
    w.key("im");
    w.begin_array();
    for (long r = 0; r < m.rows(); ++r) {
      w.begin_array();
      for (long c = 0; c < m.cols(); ++c) w.value(m(r, c).imag());
      w.end_array();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

Field symbol_from_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw error("symbol json: parse failure");
  if (!j.is_object() || !j.contains("group") || !j.contains("band") || !j.contains("entries"))
    throw error("symbol json: missing group/band/entries");
  const GroupDescriptor G = group_from_nl(j.at("group"));
  const double band = j.at("band").get<double>();
  DualPtr dual = Dual::make(G, band);
  Field sigma(dual);
  if (j.contains("margin")) sigma.set_margin(j.at("margin").get<int>());
  for (const auto& e : j.at("entries")) {
    if (!e.contains("label") || !e.contains("re") || !e.contains("im"))
      throw error("symbol json: entry missing label/re/im");
    IrrepLabel l;
    label_parse_rec(e.at("label"), G, l);
    const int p = dual->index_of(l);
    if (p < 0) throw error("symbol json: label " + l.to_string() + " outside band");
    const int d = dual->dim(p);
    const auto& re = e.at("re");
    const auto& im = e.at("im");
    if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d)
      throw error("symbol json: entry size mismatch at " + l.to_string());
    Mat m(d, d);
    for (int r = 0; r < d; ++r) {
      if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d)
        throw error("symbol json: ragged entry at " + l.to_string());
      for (int c = 0; c < d; ++c)
        m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
    }
    sigma.at(p) = std::move(m);
  }
  return sigma;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write " + path);
  out << content;
}

Field symbol_from_json_file(const std::string& path) {
  return symbol_from_json_text(read_text_file(path));
}

GridFunction grid_from_csv(const std::string& path, const RulePtr& rule) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  CVec v = CVec::Zero(rule->size());
  std::string line;
  long lineno = 0, seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    long idx;
    double re, im;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf", &idx, &re, &im) != 3)
      throw error("csv parse failure at line " + std::to_string(lineno) + ": " + line);
    if (idx < 0 || idx >= rule->size())
      throw error("csv node index " + std::to_string(idx) + " out of range at line " +
                  std::to_string(lineno));
    v(idx) = cplx(re, im);
    ++seen;
  }
  if (seen != rule->size())
    throw error("csv has " + std::to_string(seen) + " rows, rule has " +
                std::to_string(rule->size()) + " nodes");
  return GridFunction(rule, std::move(v));
}

std::string grid_to_csv(const GridFunction& f) {
  std::ostringstream os;
  os << "# index,re,im\n";
  char buf[128];
  for (long k = 0; k < f.values.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g\n", k, f.values(k).real(),
                  f.values(k).imag());
    os << buf;
  }
  return os.str();
}

GroupDescriptor parse_group_spec(const std::string& spec) {
  if (spec == "su2") return GroupDescriptor::su2();
  if (spec.rfind("torus:", 0) == 0) {
    const int d = std::atoi(spec.c_str() + 6);
    if (d <= 0) throw error("bad torus spec: " + spec);
    return GroupDescriptor::torus(d);
  }
  if (spec.rfind("product:", 0) == 0) {
    std::vector<GroupDescriptor> fs;
    std::string rest = spec.substr(8);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) fs.push_back(parse_group_spec(tok));
    if (fs.empty()) throw error("bad product spec: " + spec);
    return GroupDescriptor::product(std::move(fs));
  }
  throw error("unknown group spec: " + spec + " (expected torus:d | su2 | product:...)");
}

}  // namespace ghat
