#pragma once

#include <string>
#include <vector>

#include "ghat/fourier.hpp"

namespace ghat {

// Deterministic JSON emitter: keys in insertion order, doubles printed with
// %.17g so reruns of a command produce byte-identical files.
class JsonWriter {
public:
  std::string str() const { return out_; }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value(const std::string& v);
  void value(const char* v);
  void value(double v);
  void value(long v);
  void value(int v) { value(static_cast<long>(v)); }
  void value(bool v);
  void raw(const std::string& r);

  void kv(const std::string& k, const std::string& v) { key(k); value(v); }
  void kv(const std::string& k, const char* v) { key(k); value(v); }
  void kv(const std::string& k, double v) { key(k); value(v); }
  void kv(const std::string& k, long v) { key(k); value(v); }
  void kv(const std::string& k, int v) { key(k); value(v); }
  void kv(const std::string& k, bool v) { key(k); value(v); }

  static std::string number(double v);

private:
  void comma();
  std::string out_;
  std::vector<bool> need_comma_;
  bool pending_value_ = false;
};

// {"kind": "torus"|"su2"|"product", "d": int, "factors": [...]}
std::string group_to_json(const GroupDescriptor& G);
GroupDescriptor group_from_json_text(const std::string& text);
void group_emit(JsonWriter& w, const GroupDescriptor& G);

// {"su2": 3} | {"torus": [1,-2]} | {"product": [...]}
void label_emit(JsonWriter& w, const GroupDescriptor& G, const IrrepLabel& l);
IrrepLabel label_from_json_text(const GroupDescriptor& G, const std::string& text);

// Coefficient fields / symbols:
// {"group":..., "band": L, "margin": m, "entries":[{"label":..., "re":[[..]], "im":[[..]]}]}
std::string symbol_to_json(const Field& sigma);
Field symbol_from_json_text(const std::string& text);
Field symbol_from_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// GridFunction CSV: "index,re,im" per node, matched to `rule` by count.
GridFunction grid_from_csv(const std::string& path, const RulePtr& rule);
std::string grid_to_csv(const GridFunction& f);

// "torus:2" | "su2" | "product:su2,torus:1"
GroupDescriptor parse_group_spec(const std::string& spec);

}  // namespace ghat
