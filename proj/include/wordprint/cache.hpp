#pragma once

// On-disk cache of rendered table outputs. Entries are keyed by the library
// version plus the full command parameters; a hit replays the stored bytes
// unchanged. The key is stored inside the file and verified on read, so a
// filename-hash collision can only cause a recompute, never a wrong replay.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace wordprint {

inline constexpr std::string_view kVersion = "0.1.0";

class TableCache {
public:
    TableCache() = default;
    explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }

    std::optional<std::string> get(std::string_view key) const {
        if (!enabled()) return std::nullopt;
        std::ifstream in(path_for(key), std::ios::binary);
        if (!in) return std::nullopt;
        std::string stored_key;
        if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;
        std::ostringstream rest;
        rest << in.rdbuf();
        return rest.str();
    }

    void put(std::string_view key, std::string_view payload) const {
        if (!enabled()) return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        std::ofstream out(path_for(key), std::ios::binary | std::ios::trunc);
        if (!out) return; // caching is best-effort
        out << key << '\n' << payload;
    }

    static std::string make_key(std::string_view command_line) {
        return std::string(kVersion) + " " + std::string(command_line);
    }

private:
    std::filesystem::path path_for(std::string_view key) const {
        std::uint64_t h = 1469598103934665603ull;
        for (char c : key) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        char name[32];
        std::snprintf(name, sizeof name, "%016llx.cache", static_cast<unsigned long long>(h));
        return dir_ / name;
    }

    std::filesystem::path dir_;
};

} // namespace wordprint
