// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <set>

#include "tornado/cli.hpp"
#include "tornado/errors.hpp"

namespace tornado::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// "--name" or "--name=value" -> "name"
std::string flag_name(const std::string& arg) {
    if (arg.size() < 3 || arg.compare(0, 2, "--") != 0) {
        return {};
    }
    return arg.substr(2, arg.find('=') == std::string::npos ? std::string::npos : arg.find('=') - 2);
}

} // namespace

ConfigEntries parse_config(std::string_view text) {
    ConfigEntries out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const std::string where = "config line " + std::to_string(line_no);
        if (eq == std::string_view::npos) {
            throw SyntaxError("expected key = value", where);
        }
        std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw SyntaxError("empty key", where);
        }
        std::replace(key.begin(), key.end(), '_', '-');
        out.emplace_back(std::move(key), value);
    }
    return out;
}

std::vector<std::string> apply_config(const std::vector<std::string>& args, const ConfigEntries& config) {
    std::set<std::string> given;
    for (const auto& a : args) {
        if (auto name = flag_name(a); !name.empty()) {
            given.insert(name);
        }
    }
    std::vector<std::string> out = args;
    for (const auto& [key, value] : config) {
        if (given.count(key) == 0) {
            out.push_back("--" + key);
            out.push_back(value);
        }
    }
    return out;
}

} // namespace tornado::cli
