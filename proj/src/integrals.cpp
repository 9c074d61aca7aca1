#include "detqpe/integrals.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "detqpe/errors.hpp"

namespace detqpe {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDuplicateTol = 1e-10;

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

// The 8 chemists'-notation images of (pq|rs).
std::array<std::array<int, 4>, 8> images(int p, int q, int r, int s) {
    return {{{p, q, r, s},
             {q, p, r, s},
             {p, q, s, r},
             {q, p, s, r},
             {r, s, p, q},
             {s, r, p, q},
             {r, s, q, p},
             {s, r, q, p}}};
}

} // namespace

IntegralSet::IntegralSet(int n, int na, int nb) : n_orbitals(n), n_alpha(na), n_beta(nb) {
    if (n <= 0) throw InputError("IntegralSet: n_orbitals must be positive");
    one_body.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    two_body.assign(one_body.size() * one_body.size(), 0.0);
}

void IntegralSet::set_h(int p, int q, double value) {
    one_body[idx2(p, q)] = value;
    one_body[idx2(q, p)] = value;
}

void IntegralSet::set_v(int p, int q, int r, int s, double value) {
    for (const auto& im : images(p, q, r, s)) two_body[idx4(im[0], im[1], im[2], im[3])] = value;
}

void IntegralSet::validate() const {
    const int n = n_orbitals;
    if (n_alpha <= 0 || n_beta <= 0 || n_alpha > n || n_beta > n)
        throw InputError("IntegralSet: electron counts must satisfy 0 < k <= n");
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (std::abs(h(p, q) - h(q, p)) > kSymmetryTol)
                throw InputError("IntegralSet: one-body tensor is not symmetric");
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    const double ref = v(p, q, r, s);
                    for (const auto& im : images(p, q, r, s))
                        if (std::abs(two_body[idx4(im[0], im[1], im[2], im[3])] - ref) >
                            kSymmetryTol)
                            throw InputError("IntegralSet: two-body tensor breaks 8-fold symmetry");
                }
}

namespace {

struct Header {
    int norb = -1;
    int nelec = -1;
    int ms2 = 0;
};

// Header region: everything from &FCI up to &END or a bare "/".
Header parse_header(std::istream& in) {
    Header h;
    bool saw_norb = false, saw_nelec = false, in_header = false, done = false;
    std::string line;
    while (!done && std::getline(in, line)) {
        std::string u = upper(line);
        if (!in_header) {
            const auto amp = u.find("&FCI");
            if (amp == std::string::npos) {
                if (u.find_first_not_of(" \t\r\n") == std::string::npos) continue;
                throw InputError("FCIDUMP: expected &FCI header");
            }
            in_header = true;
            u = u.substr(amp + 4);
        }
        // Terminators may share a line with the last assignments.
        for (const char* end : {"&END", "/"}) {
            const auto pos = u.find(end);
            if (pos != std::string::npos) {
                u = u.substr(0, pos);
                done = true;
                break;
            }
        }
        // Split on commas/whitespace into KEY=VALUE tokens.
        std::string normalized;
        for (char c : u) normalized += (c == ',') ? ' ' : c;
        std::istringstream fields(normalized);
        auto read_int_assign = [&](const std::string& field, const char* name, int& out) {
            const std::string v = field.substr(std::string(name).size() + 1);
            try {
                out = std::stoi(v);
            } catch (const std::exception&) {
                throw InputError(std::string("FCIDUMP: bad ") + name + " value '" + v + "'");
            }
        };
        std::string token;
        while (fields >> token) {
            if (token.rfind("NORB=", 0) == 0) {
                read_int_assign(token, "NORB", h.norb);
                saw_norb = true;
            } else if (token.rfind("NELEC=", 0) == 0) {
                read_int_assign(token, "NELEC", h.nelec);
                saw_nelec = true;
            } else if (token.rfind("MS2=", 0) == 0) {
                read_int_assign(token, "MS2", h.ms2);
            }
            // ORBSYM / ISYM / continuation values are accepted and ignored.
        }
    }
    if (!in_header || !done) throw InputError("FCIDUMP: header not terminated by &END or /");
    if (!saw_norb || !saw_nelec) throw InputError("FCIDUMP: header must name NORB and NELEC");
    if (h.norb <= 0) throw InputError("FCIDUMP: NORB must be positive");
    if (h.nelec <= 0) throw InputError("FCIDUMP: NELEC must be positive");
    return h;
}

} // namespace

IntegralSet parse_fcidump(std::istream& text) {
    const Header header = parse_header(text);
    if ((header.nelec + header.ms2) % 2 != 0)
        throw InputError("FCIDUMP: NELEC + MS2 must be even");
    const int n_alpha = (header.nelec + header.ms2) / 2;
    const int n_beta = (header.nelec - header.ms2) / 2;

    IntegralSet ints(header.norb, n_alpha, n_beta);
    const int n = header.norb;

    std::vector<char> seen1(ints.one_body.size(), 0);
    std::vector<char> seen2(ints.two_body.size(), 0);
    bool seen_core = false;

    auto check_set = [&](std::vector<double>& store, std::vector<char>& seen, std::size_t idx,
                         double value, long lineno) {
        if (seen[idx] && std::abs(store[idx] - value) > kDuplicateTol)
            throw InputError("FCIDUMP: conflicting duplicate entry at line " +
                             std::to_string(lineno));
        store[idx] = value;
        seen[idx] = 1;
    };

    std::string line;
    long lineno = 0;
    while (std::getline(text, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        double value = 0.0;
        long i = 0, j = 0, k = 0, l = 0;
        if (!(ls >> value >> i >> j >> k >> l))
            throw InputError("FCIDUMP: malformed entry at line " + std::to_string(lineno));
        auto in_range = [&](long x) { return x >= 0 && x <= n; };
        if (!in_range(i) || !in_range(j) || !in_range(k) || !in_range(l))
            throw InputError("FCIDUMP: index out of range at line " + std::to_string(lineno));
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            if (seen_core && std::abs(ints.core_energy - value) > kDuplicateTol)
                throw InputError("FCIDUMP: conflicting duplicate core energy at line " +
                                 std::to_string(lineno));
            ints.core_energy = value;
            seen_core = true;
        } else if (k == 0 && l == 0) {
            if (i == 0 || j == 0)
                throw InputError("FCIDUMP: one-body entry with zero index at line " +
                                 std::to_string(lineno));
            const int p = static_cast<int>(i - 1), q = static_cast<int>(j - 1);
            check_set(ints.one_body, seen1, ints.idx2(p, q), value, lineno);
            check_set(ints.one_body, seen1, ints.idx2(q, p), value, lineno);
        } else {
            if (i == 0 || j == 0 || k == 0 || l == 0)
                throw InputError("FCIDUMP: two-body entry with zero index at line " +
                                 std::to_string(lineno));
            const int p = static_cast<int>(i - 1), q = static_cast<int>(j - 1),
                      r = static_cast<int>(k - 1), s = static_cast<int>(l - 1);
            for (const auto& im : images(p, q, r, s))
                check_set(ints.two_body, seen2, ints.idx4(im[0], im[1], im[2], im[3]), value,
                          lineno);
        }
    }

    ints.validate();
    return ints;
}

IntegralSet parse_fcidump_string(const std::string& text) {
    std::istringstream in(text);
    return parse_fcidump(in);
}

IntegralSet parse_fcidump_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open FCIDUMP file: " + path);
    return parse_fcidump(in);
}

std::string serialize_fcidump(const IntegralSet& ints) {
    std::ostringstream out;
    const int n = ints.n_orbitals;
    const int nelec = ints.n_alpha + ints.n_beta;
    const int ms2 = ints.n_alpha - ints.n_beta;
    out << "&FCI NORB=" << n << ",NELEC=" << nelec << ",MS2=" << ms2 << ",\n&END\n";
    char buf[64];
    auto emit = [&](double v, int i, int j, int k, int l) {
        std::snprintf(buf, sizeof(buf), "%.17g %d %d %d %d\n", v, i, j, k, l);
        out << buf;
    };
    // Two-body: one representative per 8-fold orbit (p>=q, r>=s, (p,q)>=(r,s)).
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (r == p && s > q) continue;
                    const double v = ints.v(p, q, r, s);
                    if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
                }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q) {
            const double h = ints.h(p, q);
            if (h != 0.0) emit(h, p + 1, q + 1, 0, 0);
        }
    emit(ints.core_energy, 0, 0, 0, 0);
    return out.str();
}

} // namespace detqpe
