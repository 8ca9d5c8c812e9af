#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "strata/kb.hpp"

inline std::string data_file(const std::string& name) { return std::string(STRATA_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
    std::ifstream f(data_file(name));
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline strata::KnowledgeBase load_kb(const std::string& name) { return strata::parse_kb(read_data(name)); }

inline strata::AtomId id_of(const strata::KnowledgeBase& kb, const std::string& name) {
    return *kb.atoms().find(name);
}
