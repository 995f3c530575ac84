#include "salemap/io.hpp"

#include "salemap/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace salemap::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Int parse_int(const std::string& token, std::size_t line) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || token.empty()) {
        throw IoError("set file line " + std::to_string(line) + ": expected an integer, got '" + token + "'");
    }
    return static_cast<Int>(v);
}

// Content errors in a file are reported as I/O failures.
template <class F>
DiscreteSet checked(F&& build) {
    try {
        return build();
    } catch (const ParameterError& e) {
        throw IoError(std::string("invalid set file: ") + e.what());
    }
}

}  // namespace

SetFormat set_format_for(const std::filesystem::path& path) {
    return path.extension() == ".json" ? SetFormat::json : SetFormat::text;
}

DiscreteSet parse_set_text(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    Int ambient = -1;
    std::vector<Int> elems;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (ambient < 0) {
            if (t.size() < 2 || t[0] != 'N' || (t[1] != ' ' && t[1] != '\t')) {
                throw IoError("set file must start with 'N <ambient>'");
            }
            ambient = parse_int(trim(t.substr(1)), lineno);
            continue;
        }
        elems.push_back(parse_int(t, lineno));
    }
    if (ambient < 0) throw IoError("set file is empty");
    return checked([&] { return DiscreteSet(ambient, std::move(elems)); });
}

DiscreteSet parse_set_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("set JSON does not parse: ") + e.what());
    }
    if (!j.is_object() || !j.contains("ambient") || !j.contains("elements") || !j["ambient"].is_number_integer() ||
        !j["elements"].is_array()) {
        throw IoError("set JSON needs integer 'ambient' and array 'elements'");
    }
    std::vector<Int> elems;
    for (const auto& e : j["elements"]) {
        if (!e.is_number_integer()) throw IoError("set JSON elements must be integers");
        elems.push_back(e.get<Int>());
    }
    const Int ambient = j["ambient"].get<Int>();
    return checked([&] { return DiscreteSet(ambient, std::move(elems)); });
}

std::string format_set_text(const DiscreteSet& set) {
    std::string out = "N " + std::to_string(set.ambient()) + "\n";
    for (Int e : set.elements()) {
        out += std::to_string(e);
        out += '\n';
    }
    return out;
}

std::string format_set_json(const DiscreteSet& set) {
    nlohmann::ordered_json j;
    j["ambient"] = set.ambient();
    j["elements"] = std::vector<Int>(set.elements().begin(), set.elements().end());
    return j.dump() + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << contents;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

DiscreteSet read_set(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_set_json(text);
    std::istringstream in(text);
    return parse_set_text(in);
}

void write_set(const std::filesystem::path& path, const DiscreteSet& set, SetFormat format) {
    write_file(path, format == SetFormat::json ? format_set_json(set) : format_set_text(set));
}

std::string spectrum_csv(const Spectrum& spectrum) {
    std::string out = "k,re,im,abs\n";
    char buf[128];
    for (Int k = 0; k < spectrum.modulus(); ++k) {
        const Complex c = spectrum[static_cast<std::size_t>(k)];
        std::snprintf(buf, sizeof buf, "%lld,%.15g,%.15g,%.15g\n", static_cast<long long>(k), c.real(), c.imag(),
                      std::abs(c));
        out += buf;
    }
    return out;
}

std::vector<double> read_points(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::vector<double> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size()) throw IoError("points file line " + std::to_string(lineno) + ": not a number");
        pts.push_back(v);
    }
    return pts;
}

}  // namespace salemap::io
