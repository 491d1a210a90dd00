#pragma once

#include "heegaard/heegaard.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace hdtest {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline hd::Diagram corpus(const std::string& name) { return hd::parse_diagram(read_file(std::string(HD_CORPUS) + "/" + name + ".hd")); }

inline hd::Diagram testdata(const std::string& name) {
    return hd::parse_diagram(read_file(std::string(HD_TESTDATA) + "/" + name + ".hd"));
}

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> n{"torus1", "torus2", "torus3", "example1", "s1xs2", "genus3"};
    return n;
}

inline hd::Domain dom(const hd::Diagram& d, const std::string& s) { return hd::parse_domain(d, s); }
inline hd::Generator gen(const hd::Diagram& d, const std::string& s) { return hd::parse_generator(d, s); }

}  // namespace hdtest
