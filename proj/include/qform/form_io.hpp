#pragma once

#include <string>

#include <json.hpp>

#include "qform/forms.hpp"

namespace qform {

using Json = nlohmann::ordered_json;

// {"gram": [[...]], "name": ...} or {"diag_q": [a1, ..., am]}.
QuadForm form_from_json(const Json& j);
QuadForm load_form(const std::string& path);
Json form_to_json(const QuadForm& q);

// Rounds to 12 significant digits so serialized output is stable.
double sig12(long double x);
Json integer_json(const Integer& x);  // number when it fits in 53 bits, else string

}  // namespace qform
