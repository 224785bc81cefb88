#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bvm/errors.hpp"

namespace bvm::io {

// Deterministic JSON document builder. Output rules: object keys sorted
// lexicographically, doubles printed with %.17g (shortest exact form is not
// used so reruns are byte-identical across compilers), non-finite doubles
// serialized as the strings "inf", "-inf", "nan".
class Json {
  public:
    enum class Kind { Null, Bool, Int, Real, Str, Array, Object };

    Json() : kind_(Kind::Null) {}
    static Json null() { return Json(); }
    static Json boolean(bool b);
    static Json integer(std::int64_t v);
    static Json real(double v);
    static Json str(std::string v);
    static Json array();
    static Json object();

    Kind kind() const { return kind_; }

    // Array ops.
    Json& push(Json v);
    // Object ops; set overwrites.
    Json& set(const std::string& key, Json v);

    // Convenience element builders.
    static Json real_array(const std::vector<double>& v);
    static Json int_array(const std::vector<std::int64_t>& v);

    // Rendered with 2-space indentation and a trailing newline.
    std::string dump() const;

  private:
    void render(std::string& out, int depth) const;

    Kind kind_;
    bool bool_ = false;
    std::int64_t int_ = 0;
    double real_ = 0.0;
    std::string str_;
    std::vector<Json> items_;
    std::map<std::string, Json> fields_;
};

// Formats one double exactly as the JSON writer does.
std::string format_double(double v);

// A CSV cell is either text (headers, labels) or a number formatted with
// %.17g. The decimal separator is always "." regardless of locale.
struct CsvCell {
    enum class Kind { Text, Real, Int } kind;
    std::string text;
    double real = 0.0;
    std::int64_t integer = 0;

    static CsvCell txt(std::string s) { return {Kind::Text, std::move(s), 0.0, 0}; }
    static CsvCell num(double v) { return {Kind::Real, {}, v, 0}; }
    static CsvCell idx(std::int64_t v) { return {Kind::Int, {}, 0.0, v}; }
};

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(std::vector<CsvCell> cells);
    std::string dump() const;

  private:
    std::size_t width_;
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

// Writes content to path. Parent directories are not created: a missing
// output directory is a caller error. Throws IoError on any filesystem
// failure.
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

}  // namespace bvm::io
