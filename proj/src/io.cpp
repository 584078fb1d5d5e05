#include "lewisper/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lewisper/errors.hpp"

namespace lewisper {
namespace io {

namespace {

std::string expect_header(std::istream& in, const std::string& key) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos ||
        line.substr(0, eq).find(key) == std::string::npos)
        throw ParseError("expected header '" + key + " = ...', got '" + line + "'");
    return line.substr(eq + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream iss(s);
    std::vector<std::string> out;
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad numeric token '" + s + "'");
    }
    if (pos != s.size()) throw ParseError("bad numeric token '" + s + "'");
    return v;
}

int to_int(const std::string& s) {
    const double v = to_double(s);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw ParseError("expected integer, got '" + s + "'");
    return i;
}

Mat read_matrix(std::istream& in, int d) {
    Mat m(d, d);
    for (int r = 0; r < d; ++r) {
        std::string line;
        do {
            if (!std::getline(in, line)) throw ParseError("unexpected end of rep file");
        } while (line.empty() || line[0] == '#');
        const auto toks = split_ws(line);
        if (static_cast<int>(toks.size()) != d)
            throw ParseError("matrix row has " + std::to_string(toks.size()) +
                             " entries, expected " + std::to_string(d));
        for (int c = 0; c < d; ++c) m(r, c) = parse_complex(toks[static_cast<std::size_t>(c)]);
    }
    return m;
}

}  // namespace

std::string format_complex(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

cplx parse_complex(const std::string& token) {
    if (token.empty() || token.back() != 'j')
        throw ParseError("complex entry must end in j: '" + token + "'");
    const std::string body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw ParseError("complex entry needs re+imj form: '" + token + "'");
    return {to_double(body.substr(0, split)), to_double(body.substr(split))};
}

std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

finrep::FiniteRep read_rep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open rep file '" + path + "'");
    const int d = to_int(split_ws(expect_header(in, "dim")).at(0));
    const int order = to_int(split_ws(expect_header(in, "N")).at(0));
    if (d <= 0 || d > 64) throw ParseError("rep dimension out of range");
    const Mat s = read_matrix(in, d);
    const Mat t = read_matrix(in, d);
    auto rep = finrep::make_rep(s, t);
    if (rep.order_T != order)
        throw ParseError("rep file order N = " + std::to_string(order) +
                         " but mat_T has order " + std::to_string(rep.order_T));
    return rep;
}

void write_rep_file(const std::string& path, const finrep::FiniteRep& rep) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write rep file '" + path + "'");
    out << "dim = " << rep.dim << "\n";
    out << "N = " << rep.order_T << "\n";
    for (const Mat* m : {&rep.mat_S, &rep.mat_T}) {
        for (int r = 0; r < rep.dim; ++r) {
            for (int c = 0; c < rep.dim; ++c) {
                if (c) out << ' ';
                out << format_complex((*m)(r, c));
            }
            out << "\n";
        }
    }
}

CoeffFile read_coeff_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open coefficient file '" + path + "'");
    CoeffFile data;
    const auto nu_toks = split_ws(expect_header(in, "nu"));
    if (nu_toks.size() != 2) throw ParseError("nu header needs two floats");
    data.nu = spectral({to_double(nu_toks[0]), to_double(nu_toks[1])});
    data.period_N = to_int(split_ws(expect_header(in, "N")).at(0));
    data.dim = to_int(split_ws(expect_header(in, "dim")).at(0));
    if (data.dim <= 0 || data.dim > 64) throw ParseError("coefficient dim out of range");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto toks = split_ws(line);
        if (static_cast<int>(toks.size()) != 1 + 2 * data.dim)
            throw ParseError("coefficient line has wrong entry count: '" + line + "'");
        const int k = to_int(toks[0]);
        Vec v(data.dim);
        for (int i = 0; i < data.dim; ++i)
            v[i] = cplx(to_double(toks[static_cast<std::size_t>(1 + 2 * i)]),
                        to_double(toks[static_cast<std::size_t>(2 + 2 * i)]));
        data.coeffs[k] = v;
    }
    if (data.coeffs.empty()) throw ParseError("coefficient file has no data lines");
    return data;
}

void write_coeff_file(const std::string& path, const maass::MaassForm& form) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write coefficient file '" + path + "'");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "nu = %.17g %.17g", form.nu.nu.real(),
                  form.nu.nu.imag());
    out << buf << "\n";
    out << "N = " << form.period_N << "\n";
    out << "dim = " << form.dim() << "\n";
    for (const auto& [k, v] : form.coeffs) {
        out << k;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            std::snprintf(buf, sizeof(buf), " %.17g %.17g", v[i].real(), v[i].imag());
            out << buf;
        }
        out << "\n";
    }
}

maass::MaassForm to_form(const CoeffFile& data, const finrep::FiniteRep& rep) {
    if (rep.dim != data.dim)
        throw DimensionError("coefficient dim does not match representation dim");
    auto form = maass::make_form(data.nu, rep, data.coeffs);
    if (form.period_N != data.period_N)
        throw ParseError("coefficient file N = " + std::to_string(data.period_N) +
                         " does not match the representation period " +
                         std::to_string(form.period_N));
    return form;
}

maass::MaassForm to_form(const CoeffFile& data) {
    if (data.dim != 1)
        throw InputError("coefficient files with dim > 1 need an explicit representation");
    return to_form(data, finrep::trivial_rep());
}

}  // namespace io
}  // namespace lewisper
