#include "qsc/json_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace qsc {

using nlohmann::json;

TwoComplex parse_complex(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("complex file is not valid JSON: ") + e.what());
  }
  try {
    const json& jf = j.at("field");
    int d = jf.at("d").get<int>();
    int ell = jf.at("ell").get<int>();
    std::optional<std::vector<int>> modulus;
    if (jf.contains("modulus")) modulus = jf.at("modulus").get<std::vector<int>>();
    FieldCtxPtr field = make_field(d, ell, modulus);

    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, int> vidx;
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) vidx[vertices[i]] = i;

    std::vector<EdgeRec> edges;
    std::map<std::string, int> eidx;
    for (const json& je : j.at("edges")) {
      EdgeRec e;
      e.id = je.at("id").get<std::string>();
      std::string from = je.at("from").get<std::string>();
      std::string to = je.at("to").get<std::string>();
      if (!vidx.count(from) || !vidx.count(to))
        throw ParseError("edge " + e.id + " references an undeclared vertex");
      e.from = vidx[from];
      e.to = vidx[to];
      eidx[e.id] = static_cast<int>(edges.size());
      edges.push_back(std::move(e));
    }

    std::vector<FaceRec> faces;
    std::map<std::string, int> fidx;
    for (const json& jf2 : j.at("faces")) {
      FaceRec f;
      f.id = jf2.at("id").get<std::string>();
      for (const json& entry : jf2.at("boundary")) {
        std::string eid = entry.at(0).get<std::string>();
        int sign = entry.at(1).get<int>();
        if (!eidx.count(eid)) throw ParseError("face " + f.id + " references unknown edge " + eid);
        f.boundary.push_back({eidx[eid], sign});
      }
      fidx[f.id] = static_cast<int>(faces.size());
      faces.push_back(std::move(f));
    }

    std::vector<int> punctures;
    if (j.contains("punctures"))
      for (const json& p : j.at("punctures")) {
        std::string id = p.get<std::string>();
        if (!fidx.count(id)) throw ParseError("puncture references unknown face " + id);
        punctures.push_back(fidx[id]);
      }

    std::string mode = j.value("mode", "closed");
    if (mode != "closed" && mode != "bounded")
      throw ParseError("mode must be \"closed\" or \"bounded\", got \"" + mode + "\"");

    return TwoComplex(field, std::move(vertices), std::move(edges), std::move(faces),
                      mode == "closed" ? ComplexMode::Closed : ComplexMode::Bounded,
                      std::move(punctures));
  } catch (const json::exception& e) {
    throw ParseError(std::string("complex file missing or mistyped field: ") + e.what());
  }
}

TwoComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_complex(buf.str());
}

std::string serialize_complex(const TwoComplex& g) {
  JsonWriter w;
  w.begin_object();
  w.key("field").begin_object();
  w.key("d").value(g.field().d());
  w.key("ell").value(g.field().ell());
  w.key("modulus").begin_array();
  for (int c : g.field().modulus()) w.value(c);
  w.end_array();
  w.end_object();

  w.key("vertices").begin_array();
  for (const auto& v : g.vertex_ids()) w.value(v);
  w.end_array();

  w.key("edges").begin_array();
  for (const auto& e : g.edges()) {
    w.begin_object();
    w.key("id").value(e.id);
    w.key("from").value(g.vertex_ids()[e.from]);
    w.key("to").value(g.vertex_ids()[e.to]);
    w.end_object();
  }
  w.end_array();

  w.key("faces").begin_array();
  for (const auto& f : g.faces()) {
    w.begin_object();
    w.key("id").value(f.id);
    w.key("boundary").begin_array();
    for (auto& [e, s] : f.boundary) {
      w.begin_array();
      w.value(g.edges()[e].id);
      w.value(s);
      w.end_array();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();

  w.key("punctures").begin_array();
  for (int p : g.punctures()) w.value(g.faces()[p].id);
  w.end_array();

  w.key("mode").value(g.mode() == ComplexMode::Closed ? "closed" : "bounded");
  w.end_object();
  return w.str();
}

void save_complex(const TwoComplex& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << serialize_complex(g) << "\n";
}

// ---------------------------------------------------------------------------
// JsonWriter
// ---------------------------------------------------------------------------

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_in_scope_.empty()) {
    if (!first_in_scope_.back()) out_ << ",";
    first_in_scope_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ << "{";
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ << "}";
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ << "[";
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ << "]";
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separator();
  out_ << '"' << escape(k) << "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separator();
  out_ << '"' << escape(v) << '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  separator();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separator();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<std::int64_t>(v)); }

JsonWriter& JsonWriter::value(bool v) {
  separator();
  out_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::raw(const std::string& fragment) {
  separator();
  out_ << fragment;
  return *this;
}

std::string JsonWriter::escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string JsonWriter::format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qsc
