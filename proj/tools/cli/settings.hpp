#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace clutterscan::cli {

/// Effective key/value configuration of one run. Keys are the long flag names
/// (`n-grid`, `out-dir`, ...); config files may spell them with underscores.
class Settings {
public:
    /// Defaults for every known key, adjusted for the command.
    explicit Settings(const std::string& command);

    static const std::vector<std::string>& known_keys();
    static std::string normalize_key(std::string key);

    /// Throws Error(ParseError) on malformed lines or unknown keys.
    void load_file(const std::filesystem::path& path);
    void set(const std::string& key, const std::string& value);

    [[nodiscard]] const std::string& command() const noexcept { return command_; }
    [[nodiscard]] const std::string& get(const std::string& key) const;
    [[nodiscard]] long long get_int(const std::string& key) const;
    [[nodiscard]] std::uint64_t get_u64(const std::string& key) const;
    [[nodiscard]] double get_double(const std::string& key) const;
    [[nodiscard]] bool get_bool(const std::string& key) const;
    [[nodiscard]] std::vector<std::size_t> get_size_list(const std::string& key) const;
    [[nodiscard]] std::vector<double> get_double_list(const std::string& key) const;

    /// `key = value` lines for every key, readable by load_file.
    void write_manifest(std::ostream& os) const;

private:
    std::string command_;
    std::map<std::string, std::string> values_;
};

}  // namespace clutterscan::cli
