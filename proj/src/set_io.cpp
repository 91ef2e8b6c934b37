#include "itersum/set_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "itersum/errors.hpp"

namespace itersum {

GroupedSet read_set(std::istream& in) {
    Monoid monoid = Monoid::additive;
    std::vector<Scalar> values;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') {
            std::size_t colon = line.find(':', pos);
            if (line.compare(pos, 7, "#monoid") == 0 && colon != std::string::npos) {
                std::string tag = line.substr(colon + 1);
                std::size_t t = tag.find_first_not_of(" \t");
                tag = t == std::string::npos ? "" : tag.substr(t);
                while (!tag.empty() && (tag.back() == ' ' || tag.back() == '\t')) tag.pop_back();
                if (tag == "additive")
                    monoid = Monoid::additive;
                else if (tag == "multiplicative")
                    monoid = Monoid::multiplicative;
                else
                    throw ParseError("unknown monoid tag: '" + tag + "'");
            }
            continue;
        }
        values.push_back(parse_scalar(line));
    }
    return GroupedSet::from_values(std::move(values), monoid);
}

GroupedSet read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open set file: " + path);
    return read_set(in);
}

std::string format_set(const GroupedSet& s) {
    std::ostringstream out;
    write_set(out, s);
    return out.str();
}

void write_set(std::ostream& out, const GroupedSet& s) {
    out << "#monoid: " << monoid_name(s.monoid()) << "\n";
    for (const Scalar& v : s.elements()) out << render_scalar(v) << "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write: " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("rename failed: " + path);
}

void write_set_file(const std::string& path, const GroupedSet& s) {
    write_text_file(path, format_set(s));
}

}  // namespace itersum
