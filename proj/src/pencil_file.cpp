#include "ksmap/pencil_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ksmap/errors.hpp"

namespace ksmap {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size() || x <= 0) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        fail(line, key + " must be a positive integer");
    }
}

double parse_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size() || !(x > 0.0)) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        fail(line, key + " must be a positive number");
    }
}

}  // namespace

VarNames PencilFile::names() const {
    VarNames n = default_var_names();
    for (std::size_t i = 0; i < variables.size(); ++i) n[param_var(static_cast<int>(i))] = variables[i];
    return n;
}

PencilFile parse_pencil_file(const std::string& text) {
    PencilFile pf;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int poly_line = 0, poly_col = 0, endo_line = 0, endo_col = 0;
    std::string endo_src;
    bool have_vars = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        int value_col = static_cast<int>(line.find_first_not_of(" \t", eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
            ++value_col;
        } else if (!value.empty() && (value.front() == '"' || value.back() == '"')) {
            fail(lineno, "unterminated string");
        }
        if (!seen.insert(key).second) fail(lineno, "duplicate key '" + key + "'");
        if (key == "name") {
            pf.name = value;
        } else if (key == "variables") {
            have_vars = true;
            if (!trim(value).empty()) {
                for (const auto& v : split(value, ',')) {
                    const std::string t = trim(v);
                    if (t.empty()) fail(lineno, "empty variable name");
                    for (char c : t)
                        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') fail(lineno, "invalid variable name '" + t + "'");
                    if (std::isdigit(static_cast<unsigned char>(t.front()))) fail(lineno, "invalid variable name '" + t + "'");
                    pf.variables.push_back(t);
                }
            }
            if (pf.variables.size() > static_cast<std::size_t>(kMaxParams)) fail(lineno, "at most 2 parameters are supported");
        } else if (key == "polynomial") {
            pf.polynomial_source = value;
            poly_line = lineno;
            poly_col = value_col;
        } else if (key == "truncation") {
            pf.truncation = parse_int(value, lineno, key);
        } else if (key == "tolerance") {
            pf.tolerance = parse_double(value, lineno, key);
        } else if (key == "degree_bound") {
            try {
                std::size_t used = 0;
                const int d = std::stoi(value, &used);
                if (used != value.size() || d < 0) throw std::invalid_argument(value);
                pf.degree_bound = d;
            } catch (const std::exception&) {
                fail(lineno, "degree_bound must be a nonnegative integer");
            }
        } else if (key == "samples") {
            pf.samples = parse_int(value, lineno, key);
        } else if (key == "endomorphism") {
            endo_src = value;
            endo_line = lineno;
            endo_col = value_col;
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (!have_vars) throw InputError("missing key 'variables'");
    if (pf.polynomial_source.empty()) throw InputError("missing key 'polynomial'");
    const SymbolTable symbols = make_symbols(pf.variables);
    pf.polynomial = parse_polynomial(pf.polynomial_source, symbols, poly_line - 1, poly_col);
    if (!endo_src.empty()) {
        std::vector<std::vector<MultiPoly>> rows;
        for (const auto& r : split(endo_src, ';')) {
            std::vector<MultiPoly> row;
            for (const auto& e : split(r, ',')) row.push_back(parse_polynomial(e, symbols, endo_line - 1, endo_col));
            if (!rows.empty() && row.size() != rows.front().size()) fail(endo_line, "endomorphism rows differ in length");
            rows.push_back(std::move(row));
        }
        if (rows.size() != rows.front().size()) fail(endo_line, "endomorphism must be square");
        pf.endomorphism = std::move(rows);
    }
    return pf;
}

PencilFile load_pencil_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_pencil_file(ss.str());
}

}  // namespace ksmap
