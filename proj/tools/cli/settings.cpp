#include "cli/settings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "clutterscan/error.hpp"

namespace clutterscan::cli {

namespace {

const std::map<std::string, std::string>& base_defaults() {
    static const std::map<std::string, std::string> d = {
        {"seed", "1"},         {"out-dir", "out"},    {"trials", "50"},
        {"k", "1"},            {"d", "2"},            {"alpha", "2"},
        {"beta", "1"},         {"r0", "1"},           {"n-grid", "1000,3000,10000,30000,100000"},
        {"n1", "0"},           {"n", "1000"},         {"problem", "jets"},
        {"statistic", "greedy"}, {"sampler", "auto"}, {"workers", "1"},
        {"timing", "false"},   {"level", "0.05"},     {"null-trials", "1000"},
        {"length", "0.05"},    {"eps-grid", "0.4,0.2,0.1,0.05"}, {"probes", "1000"},
        {"samples", "100000"},
    };
    return d;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw Error(ErrorCode::ParseError, "'" + key + "' expects a number, got '" + v + "'");
    return out;
}

}  // namespace

Settings::Settings(const std::string& command) : command_(command), values_(base_defaults()) {
    if (command == "render-stimulus") {
        values_["n"] = "100";
    } else if (command == "nets-demo") {
        values_["eps-grid"] = "0.4,0.2,0.1";
    }
}

const std::vector<std::string>& Settings::known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [key, value] : base_defaults()) k.push_back(key);
        return k;
    }();
    return keys;
}

std::string Settings::normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

void Settings::set(const std::string& raw_key, const std::string& value) {
    const std::string key = normalize_key(raw_key);
    if (!values_.count(key)) throw Error(ErrorCode::ParseError, "unknown key '" + raw_key + "'");
    values_[key] = value;
}

void Settings::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
}

const std::string& Settings::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
    return it->second;
}

long long Settings::get_int(const std::string& key) const {
    const std::string& v = get(key);
    long long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw Error(ErrorCode::ParseError, "'" + key + "' expects an integer, got '" + v + "'");
    return out;
}

std::uint64_t Settings::get_u64(const std::string& key) const {
    const std::string& v = get(key);
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw Error(ErrorCode::ParseError, "'" + key + "' expects an unsigned integer, got '" + v + "'");
    return out;
}

double Settings::get_double(const std::string& key) const { return to_double(key, get(key)); }

bool Settings::get_bool(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error(ErrorCode::ParseError, "'" + key + "' expects true or false, got '" + v + "'");
}

std::vector<std::size_t> Settings::get_size_list(const std::string& key) const {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(get(key))) {
        // accept 1e5-style entries
        const double v = to_double(key, item);
        if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw Error(ErrorCode::ParseError, "'" + key + "' expects nonnegative integers, got '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw Error(ErrorCode::ParseError, "'" + key + "' is empty");
    return out;
}

std::vector<double> Settings::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(get(key))) out.push_back(to_double(key, item));
    if (out.empty()) throw Error(ErrorCode::ParseError, "'" + key + "' is empty");
    return out;
}

void Settings::write_manifest(std::ostream& os) const {
    os << "# clutterscan " << command_ << "\n";
    for (const auto& [key, value] : values_) os << key << " = " << value << "\n";
}

}  // namespace clutterscan::cli
