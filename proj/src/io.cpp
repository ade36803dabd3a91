#include "ghm/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include <openssl/evp.h>

namespace ghm {

namespace {

using nlohmann::json;

/// Builds a DOM in which every number is replaced by its literal text, so the
/// exact value survives for Scalar::parse.
class ExactNumberSax {
public:
    bool null() { return put(nullptr); }
    bool boolean(bool v) { return put(v); }
    bool number_integer(json::number_integer_t v) { return put(json(std::to_string(v))); }
    bool number_unsigned(json::number_unsigned_t v) { return put(json(std::to_string(v))); }
    bool number_float(json::number_float_t, const json::string_t& text) { return put(json(text)); }
    bool string(json::string_t& v) { return put(json(v)); }
    bool binary(json::binary_t&) { return put(nullptr); }
    bool start_object(std::size_t) { return open(json::object()); }
    bool key(json::string_t& k) {
        key_ = k;
        return true;
    }
    bool end_object() { return close(); }
    bool start_array(std::size_t) { return open(json::array()); }
    bool end_array() { return close(); }
    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        error_position_ = position;
        error_ = ex.what();
        return false;
    }

    json take() { return std::move(root_); }
    const std::string& error() const { return error_; }
    std::size_t error_position() const { return error_position_; }

private:
    bool put(json v) {
        if (stack_.empty()) {
            root_ = std::move(v);
        } else if (stack_.back()->is_array()) {
            stack_.back()->push_back(std::move(v));
        } else {
            (*stack_.back())[key_] = std::move(v);
        }
        return true;
    }
    bool open(json v) {
        json* slot = nullptr;
        if (stack_.empty()) {
            root_ = std::move(v);
            slot = &root_;
        } else if (stack_.back()->is_array()) {
            stack_.back()->push_back(std::move(v));
            slot = &stack_.back()->back();
        } else {
            slot = &((*stack_.back())[key_] = std::move(v));
        }
        stack_.push_back(slot);
        return true;
    }
    bool close() {
        stack_.pop_back();
        return true;
    }

    json root_;
    std::vector<json*> stack_;
    std::string key_;
    std::string error_;
    std::size_t error_position_ = 0;
};

[[noreturn]] void fail(std::string_view origin, const std::string& what) {
    throw Error(ErrorKind::ParseError, std::string(origin) + ": " + what);
}

std::size_t line_of(std::string_view text, std::size_t position) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < position && i < text.size(); ++i) line += text[i] == '\n' ? 1 : 0;
    return line;
}

}  // namespace

NamedSpace parse_space(std::string_view text, std::string_view origin) {
    ExactNumberSax sax;
    const bool ok = json::sax_parse(text.begin(), text.end(), &sax);
    if (!ok) {
        fail(origin, "line " + std::to_string(line_of(text, sax.error_position())) + ": " + sax.error());
    }
    const json doc = sax.take();
    if (!doc.is_object()) fail(origin, "top level must be an object");

    std::string name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) fail(origin, "field 'name' must be a string");
        name = doc["name"].get<std::string>();
    }
    if (!doc.contains("points") || !doc["points"].is_array()) fail(origin, "field 'points' must be an array");
    if (!doc.contains("dist") || !doc["dist"].is_array()) fail(origin, "field 'dist' must be an array");

    Labels labels;
    for (std::size_t i = 0; i < doc["points"].size(); ++i) {
        const auto& p = doc["points"][i];
        if (!p.is_string()) fail(origin, "points[" + std::to_string(i) + "] must be a string");
        labels.push_back(p.get<std::string>());
    }
    Matrix dist;
    for (std::size_t i = 0; i < doc["dist"].size(); ++i) {
        const auto& row = doc["dist"][i];
        if (!row.is_array()) fail(origin, "dist[" + std::to_string(i) + "] must be an array");
        std::vector<Scalar> values;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const std::string field = "dist[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            if (!row[j].is_string()) fail(origin, field + " must be a number or rational string");
            try {
                values.push_back(Scalar::parse(row[j].get<std::string>()));
            } catch (const Error& e) {
                fail(origin, field + ": " + e.what());
            }
        }
        dist.push_back(std::move(values));
    }
    try {
        return NamedSpace{std::move(name), FiniteMetricSpace::validate(std::move(labels), dist)};
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(origin) + ": " + e.what(), e.indices());
    }
}

NamedSpace parse_space_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_space(buf.str(), path.string());
}

std::string emit_space(const FiniteMetricSpace& space, std::string_view name) {
    std::ostringstream out;
    out << "{\n  \"name\": " << json(std::string(name)).dump() << ",\n  \"points\": [";
    for (std::size_t i = 0; i < space.size(); ++i) {
        out << (i == 0 ? "" : ", ") << json(space.label(i)).dump();
    }
    out << "],\n  \"dist\": [\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        out << "    [";
        for (std::size_t j = 0; j < space.size(); ++j) {
            const Scalar& v = space.d(i, j);
            out << (j == 0 ? "" : ", ") << (v.is_integer() ? v.str() : "\"" + v.str() + "\"");
        }
        out << (i + 1 == space.size() ? "]\n" : "],\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

nlohmann::json scalar_json(const Scalar& value) {
    return {{"exact", value.str()}, {"decimal", value.to_double()}};
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::Internal, "sha256 failed");
    }
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

}  // namespace ghm
