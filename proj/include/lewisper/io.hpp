#pragma once

#include <map>
#include <string>
#include <vector>

#include "lewisper/finrep.hpp"
#include "lewisper/maass.hpp"
#include "lewisper/types.hpp"

namespace lewisper {
namespace io {

// Representation file:
//   dim = d
//   N = n
//   d rows of mat_S, then d rows of mat_T; entries re+imj separated by blanks.
finrep::FiniteRep read_rep_file(const std::string& path);
void write_rep_file(const std::string& path, const finrep::FiniteRep& rep);

// Coefficient file:
//   nu = re im
//   N = n
//   dim = d
//   lines: k re_1 im_1 ... re_d im_d
struct CoeffFile {
    SpectralParameter nu;
    int period_N = 1;
    int dim = 1;
    std::map<int, Vec> coeffs;
};

CoeffFile read_coeff_file(const std::string& path);
void write_coeff_file(const std::string& path, const maass::MaassForm& form);

// Validates against the representation (trivial when dim = 1 and rep empty).
maass::MaassForm to_form(const CoeffFile& data, const finrep::FiniteRep& rep);
maass::MaassForm to_form(const CoeffFile& data);

// Fixed-precision complex entry formatting shared by the writers.
std::string format_complex(cplx z);
cplx parse_complex(const std::string& token);

// One CSV cell; %.12g keeps bodies byte-stable across runs.
std::string format_cell(double v);

}  // namespace io
}  // namespace lewisper
