#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qsc/chain_complex.hpp"

namespace qsc {

/// Raised on malformed input files; the CLI maps it to its own exit code.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parses the complex file format:
///   {"field": {"d":2,"ell":1,"modulus":[0,1]},
///    "vertices": ["v0",...],
///    "edges": [{"id":"e0","from":"v0","to":"v1"},...],
///    "faces": [{"id":"f0","boundary":[["e0",1],["e1",-1],...]},...],
///    "punctures": ["f2",...],
///    "mode": "closed"|"bounded"}
TwoComplex parse_complex(const std::string& json_text);
TwoComplex load_complex(const std::string& path);

std::string serialize_complex(const TwoComplex& g);
void save_complex(const TwoComplex& g, const std::string& path);

/// Minimal JSON emitter with deterministic key order and floats rendered via
/// "%.17g", so identical runs produce byte-identical output.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& raw(const std::string& fragment);

  std::string str() const { return out_.str(); }

  static std::string escape(const std::string& s);
  static std::string format_double(double v);

 private:
  void separator();
  std::ostringstream out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

}  // namespace qsc
