#ifndef KLCELLS_CACHE_HPP
#define KLCELLS_CACHE_HPP

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "klcells/kl.hpp"

namespace klcells {

// klcache v1: a text format for full-group KL tables.
//
//   klcache v1 <group-name> <element-count>
//   <y_index> <w_index> <c0> <c1> ...        (one line per pair y <= w,
//                                             ordered by (l(w), w, y))
//   checksum <crc32 of the pair lines, 8 hex digits>
//
// Loading re-validates the structural invariants (constant term, degree
// bound, nonnegativity) and rejects version, group, order, checksum, or
// truncation problems.

inline void save_cache(const KLTable& table, std::ostream& out) {
    if (!table.full_scope())
        throw cache_error("only full-group tables can be cached");
    const CoxeterSystem& sys = table.system();
    out << "klcache v1 " << sys.name() << ' ' << sys.size() << '\n';
    std::string body;
    table.for_each_pair([&](Element y, Element w, const Polynomial& p) {
        body += std::to_string(y);
        body += ' ';
        body += std::to_string(w);
        for (const Coeff& c : p.coeffs()) {
            body += ' ';
            body += c.get_str();
        }
        body += '\n';
    });
    unsigned long crc = ::crc32(0L, reinterpret_cast<const Bytef*>(body.data()),
                                static_cast<uInt>(body.size()));
    char hex[16];
    std::snprintf(hex, sizeof hex, "%08lx", crc & 0xffffffffUL);
    out << body << "checksum " << hex << '\n';
}

inline void save_cache(const KLTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cache_error("cannot open cache file for writing: " + path);
    save_cache(table, out);
}

inline KLTable load_cache_text(const CoxeterSystem& sys, const std::string& text) {
    if (text.empty()) throw cache_error("empty cache file");

    // The file must close with a full "checksum XXXXXXXX" line; anything else
    // is a truncation, reported at the byte where the intact prefix ends.
    std::size_t trailer = std::string::npos;
    if (!text.empty() && text.back() == '\n') {
        std::size_t prev = text.find_last_of('\n', text.size() - 2);
        std::size_t last_start = (prev == std::string::npos) ? 0 : prev + 1;
        if (text.compare(last_start, 9, "checksum ") == 0) trailer = last_start;
    }
    if (trailer == std::string::npos) {
        std::size_t last_newline = text.find_last_of('\n');
        std::size_t offset = (last_newline == std::string::npos) ? 0 : last_newline + 1;
        if (!text.empty() && text.back() == '\n') offset = text.size();
        throw cache_error("cache truncated at byte " + std::to_string(offset));
    }

    std::istringstream in(text.substr(0, trailer));
    std::string header;
    std::getline(in, header);
    {
        std::istringstream hs(header);
        std::string magic, version, group;
        std::size_t count = 0;
        if (!(hs >> magic >> version >> group >> count) || magic != "klcache")
            throw cache_error("not a klcache file");
        if (version != "v1") throw cache_error("unsupported cache version: " + version);
        if (group != sys.name())
            throw cache_error("cache is for group " + group + ", not " + sys.name());
        if (count != sys.size()) throw cache_error("cache element count mismatch");
    }

    {
        std::size_t body_start = text.find('\n') + 1;
        unsigned long crc = ::crc32(0L, reinterpret_cast<const Bytef*>(text.data() + body_start),
                                    static_cast<uInt>(trailer - body_start));
        char hex[16];
        std::snprintf(hex, sizeof hex, "%08lx", crc & 0xffffffffUL);
        std::string want = text.substr(trailer + 9, 8);
        if (want != hex) throw cache_error("cache checksum mismatch");
    }

    std::vector<std::pair<std::pair<Element, Element>, Polynomial>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        unsigned long y, w;
        if (!(ls >> y >> w)) throw cache_error("malformed cache line: " + line);
        if (y >= sys.size() || w >= sys.size())
            throw cache_error("cache element index out of range");
        std::vector<Coeff> coeffs;
        std::string tok;
        while (ls >> tok) {
            try {
                coeffs.emplace_back(tok);
            } catch (...) {
                throw cache_error("malformed coefficient in cache: " + tok);
            }
        }
        rows.push_back({{static_cast<Element>(y), static_cast<Element>(w)},
                        Polynomial(std::move(coeffs))});
    }

    try {
        return KLTable::from_rows(sys, rows);
    } catch (const validation_error& e) {
        throw cache_error(std::string("cache content invalid: ") + e.what());
    } catch (const std::logic_error& e) {
        throw cache_error(std::string("cache content invalid: ") + e.what());
    }
}

inline KLTable load_cache(const CoxeterSystem& sys, std::istream& in) {
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_cache_text(sys, all);
}

inline KLTable load_cache(const CoxeterSystem& sys, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cache_error("cannot open cache file: " + path);
    try {
        return load_cache(sys, in);
    } catch (const cache_error& e) {
        throw cache_error(std::string(e.what()) + " in " + path);
    }
}

} // namespace klcells

#endif
