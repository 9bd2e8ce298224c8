// Text rendering shared by the experiment writers and the CLI.
#pragma once

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ffchar {

/// Round-trip decimal rendering (%.17g); exact zero prints as "0".
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

/// Completed combo keys, one per line.
class Checkpoint {
public:
    Checkpoint() = default;
    explicit Checkpoint(std::string path, bool resume) : path_(std::move(path)) {
        if (path_.empty()) return;
        if (resume) {
            std::ifstream in(path_);
            for (std::string line; std::getline(in, line);)
                if (!line.empty()) done_.insert(line);
        } else {
            std::ofstream truncate(path_, std::ios::trunc);
        }
    }

    bool done(const std::string& key) const { return done_.count(key) != 0; }

    void mark(const std::string& key) {
        done_.insert(key);
        if (path_.empty()) return;
        std::ofstream out(path_, std::ios::app);
        out << key << '\n';
        if (!out) throw std::runtime_error("cannot write checkpoint file " + path_);
    }

private:
    std::string path_;
    std::set<std::string> done_;
};

}  // namespace ffchar
