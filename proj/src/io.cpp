#include "bvm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace bvm::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json Json::boolean(bool b) {
    Json j;
    j.kind_ = Kind::Bool;
    j.bool_ = b;
    return j;
}

Json Json::integer(std::int64_t v) {
    Json j;
    j.kind_ = Kind::Int;
    j.int_ = v;
    return j;
}

Json Json::real(double v) {
    Json j;
    j.kind_ = Kind::Real;
    j.real_ = v;
    return j;
}

Json Json::str(std::string v) {
    Json j;
    j.kind_ = Kind::Str;
    j.str_ = std::move(v);
    return j;
}

Json Json::array() {
    Json j;
    j.kind_ = Kind::Array;
    return j;
}

Json Json::object() {
    Json j;
    j.kind_ = Kind::Object;
    return j;
}

Json& Json::push(Json v) {
    items_.push_back(std::move(v));
    return *this;
}

Json& Json::set(const std::string& key, Json v) {
    fields_[key] = std::move(v);
    return *this;
}

Json Json::real_array(const std::vector<double>& v) {
    Json j = array();
    for (double x : v) j.push(real(x));
    return j;
}

Json Json::int_array(const std::vector<std::int64_t>& v) {
    Json j = array();
    for (std::int64_t x : v) j.push(integer(x));
    return j;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x",
                              static_cast<unsigned>(static_cast<unsigned char>(c)));
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

void indent(std::string& out, int depth) {
    out.append(static_cast<std::size_t>(2 * depth), ' ');
}

} // namespace

void Json::render(std::string& out, int depth) const {
    switch (kind_) {
    case Kind::Null:
        out += "null";
        break;
    case Kind::Bool:
        out += bool_ ? "true" : "false";
        break;
    case Kind::Int:
        out += std::to_string(int_);
        break;
    case Kind::Real: {
        // Non-finite values have no JSON representation; keep them readable
        // and deterministic as strings.
        if (std::isnan(real_) || std::isinf(real_)) {
            append_escaped(out, format_double(real_));
        } else {
            out += format_double(real_);
        }
        break;
    }
    case Kind::Str:
        append_escaped(out, str_);
        break;
    case Kind::Array: {
        if (items_.empty()) {
            out += "[]";
            break;
        }
        out += "[\n";
        for (std::size_t i = 0; i < items_.size(); ++i) {
            indent(out, depth + 1);
            items_[i].render(out, depth + 1);
            if (i + 1 < items_.size()) out += ',';
            out += '\n';
        }
        indent(out, depth);
        out += ']';
        break;
    }
    case Kind::Object: {
        if (fields_.empty()) {
            out += "{}";
            break;
        }
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [key, value] : fields_) {
            indent(out, depth + 1);
            append_escaped(out, key);
            out += ": ";
            value.render(out, depth + 1);
            if (++i < fields_.size()) out += ',';
            out += '\n';
        }
        indent(out, depth);
        out += '}';
        break;
    }
    }
}

std::string Json::dump() const {
    std::string out;
    render(out, 0);
    out += '\n';
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : width_(header.size()), header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<CsvCell> cells) {
    if (cells.size() != width_) throw IoError("csv row width mismatch");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::dump() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            const CsvCell& c = row[i];
            switch (c.kind) {
            case CsvCell::Kind::Text: out += c.text; break;
            case CsvCell::Kind::Real: out += format_double(c.real); break;
            case CsvCell::Kind::Int: out += std::to_string(c.integer); break;
            }
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    // Deliberately does not create directories: a missing output directory is
    // a caller error, reported as IoError.
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw IoError("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("read failed for " + path);
    return ss.str();
}

}  // namespace bvm::io
