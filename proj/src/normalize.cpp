/*
 * Copyright 2026 kspill contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <unordered_map>

#include "kspill/corpus.hpp"
#include "util.hpp"

namespace kspill {
namespace {

// ASCII replacement for U+00C0..U+017F, lowercase. nullptr: keep as is.
const char* fold_code_point(unsigned cp) {
  if (cp >= 0xC0 && cp <= 0xFF) {
    static const char* const latin1[64] = {
        "a", "a", "a", "a", "a", "a", "ae", "c",   // C0-C7
        "e", "e", "e", "e", "i", "i", "i", "i",    // C8-CF
        "d", "n", "o", "o", "o", "o", "o", nullptr,  // D0-D7 (D7 multiplication sign)
        "o", "u", "u", "u", "u", "y", "th", "ss",  // D8-DF
        "a", "a", "a", "a", "a", "a", "ae", "c",   // E0-E7
        "e", "e", "e", "e", "i", "i", "i", "i",    // E8-EF
        "d", "n", "o", "o", "o", "o", "o", nullptr,  // F0-F7 (F7 division sign)
        "o", "u", "u", "u", "u", "y", "th", "y",   // F8-FF
    };
    return latin1[cp - 0xC0];
  }
  if (cp >= 0x100 && cp <= 0x17F) {
    struct Range {
      unsigned lo, hi;
      const char* ascii;
    };
    static constexpr Range ranges[] = {
        {0x100, 0x105, "a"}, {0x106, 0x10D, "c"}, {0x10E, 0x111, "d"},
        {0x112, 0x11B, "e"}, {0x11C, 0x123, "g"}, {0x124, 0x127, "h"},
        {0x128, 0x131, "i"}, {0x132, 0x133, "ij"}, {0x134, 0x135, "j"},
        {0x136, 0x138, "k"}, {0x139, 0x142, "l"}, {0x143, 0x14B, "n"},
        {0x14C, 0x151, "o"}, {0x152, 0x153, "oe"}, {0x154, 0x159, "r"},
        {0x15A, 0x161, "s"}, {0x162, 0x167, "t"}, {0x168, 0x173, "u"},
        {0x174, 0x175, "w"}, {0x176, 0x178, "y"}, {0x179, 0x17E, "z"},
        {0x17F, 0x17F, "s"},
    };
    for (const auto& r : ranges) {
      if (cp >= r.lo && cp <= r.hi) return r.ascii;
    }
  }
  return nullptr;
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Lowercase + fold + collapse whitespace + trim.
std::string fold_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  auto emit = [&](std::string_view piece) {
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out += piece;
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto c = static_cast<unsigned char>(raw[i]);
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (c < 0x80) {
      const char lower = static_cast<char>(std::tolower(c));
      emit(std::string_view(&lower, 1));
      continue;
    }
    if (c >= 0xC2 && c <= 0xDF && i + 1 < raw.size()) {
      const auto c2 = static_cast<unsigned char>(raw[i + 1]);
      if ((c2 & 0xC0) == 0x80) {
        const unsigned cp = ((c & 0x1Fu) << 6) | (c2 & 0x3Fu);
        if (cp == 0xA0) {  // no-break space
          pending_space = true;
          ++i;
          continue;
        }
        if (const char* ascii = fold_code_point(cp)) {
          emit(ascii);
          ++i;
          continue;
        }
        emit(raw.substr(i, 2));
        ++i;
        continue;
      }
    }
    emit(raw.substr(i, 1));
  }
  return out;
}

const std::unordered_map<std::string, std::string>& country_names() {
  static const std::unordered_map<std::string, std::string> table = [] {
    std::unordered_map<std::string, std::string> t;
    const std::pair<const char*, const char*> rows[] = {
        {"afghanistan", "AF"}, {"albania", "AL"}, {"algeria", "DZ"},
        {"andorra", "AD"}, {"angola", "AO"}, {"argentina", "AR"},
        {"armenia", "AM"}, {"australia", "AU"}, {"austria", "AT"},
        {"azerbaijan", "AZ"}, {"bahamas", "BS"}, {"bahrain", "BH"},
        {"bangladesh", "BD"}, {"barbados", "BB"}, {"belarus", "BY"},
        {"belgium", "BE"}, {"belize", "BZ"}, {"benin", "BJ"}, {"bhutan", "BT"},
        {"bolivia", "BO"}, {"bosnia and herzegovina", "BA"},
        {"bosnia & herceg", "BA"}, {"bosnia herceg", "BA"}, {"botswana", "BW"},
        {"brazil", "BR"}, {"brunei", "BN"}, {"bulgaria", "BG"},
        {"burkina faso", "BF"}, {"burundi", "BI"}, {"cambodia", "KH"},
        {"cameroon", "CM"}, {"canada", "CA"}, {"cape verde", "CV"},
        {"central african republic", "CF"}, {"chad", "TD"}, {"chile", "CL"},
        {"china", "CN"}, {"peoples r china", "CN"}, {"people's republic of china", "CN"},
        {"colombia", "CO"}, {"comoros", "KM"}, {"congo", "CG"},
        {"dem rep congo", "CD"}, {"democratic republic of the congo", "CD"},
        {"costa rica", "CR"}, {"cote d'ivoire", "CI"}, {"cote ivoire", "CI"},
        {"ivory coast", "CI"}, {"croatia", "HR"}, {"cuba", "CU"},
        {"cyprus", "CY"}, {"czech republic", "CZ"}, {"czechia", "CZ"},
        {"denmark", "DK"}, {"djibouti", "DJ"}, {"dominican republic", "DO"},
        {"dominican rep", "DO"}, {"ecuador", "EC"}, {"egypt", "EG"},
        {"el salvador", "SV"}, {"eritrea", "ER"}, {"estonia", "EE"},
        {"eswatini", "SZ"}, {"swaziland", "SZ"}, {"ethiopia", "ET"},
        {"fiji", "FJ"}, {"finland", "FI"}, {"france", "FR"}, {"gabon", "GA"},
        {"gambia", "GM"}, {"georgia", "GE"}, {"germany", "DE"}, {"ghana", "GH"},
        {"greece", "GR"}, {"greenland", "GL"}, {"guatemala", "GT"},
        {"guinea", "GN"}, {"guyana", "GY"}, {"haiti", "HT"}, {"honduras", "HN"},
        {"hong kong", "HK"}, {"hungary", "HU"}, {"iceland", "IS"},
        {"india", "IN"}, {"indonesia", "ID"}, {"iran", "IR"}, {"iraq", "IQ"},
        {"ireland", "IE"}, {"israel", "IL"}, {"italy", "IT"}, {"jamaica", "JM"},
        {"japan", "JP"}, {"jordan", "JO"}, {"kazakhstan", "KZ"}, {"kenya", "KE"},
        {"kosovo", "XK"}, {"kuwait", "KW"}, {"kyrgyzstan", "KG"}, {"laos", "LA"},
        {"latvia", "LV"}, {"lebanon", "LB"}, {"lesotho", "LS"}, {"liberia", "LR"},
        {"libya", "LY"}, {"liechtenstein", "LI"}, {"lithuania", "LT"},
        {"luxembourg", "LU"}, {"macau", "MO"}, {"macao", "MO"},
        {"madagascar", "MG"}, {"malawi", "MW"}, {"malaysia", "MY"},
        {"maldives", "MV"}, {"mali", "ML"}, {"malta", "MT"},
        {"mauritania", "MR"}, {"mauritius", "MU"}, {"mexico", "MX"},
        {"moldova", "MD"}, {"monaco", "MC"}, {"mongolia", "MN"},
        {"montenegro", "ME"}, {"morocco", "MA"}, {"mozambique", "MZ"},
        {"myanmar", "MM"}, {"namibia", "NA"}, {"nepal", "NP"},
        {"netherlands", "NL"}, {"the netherlands", "NL"}, {"new zealand", "NZ"},
        {"nicaragua", "NI"}, {"niger", "NE"}, {"nigeria", "NG"},
        {"north korea", "KP"}, {"north macedonia", "MK"}, {"macedonia", "MK"},
        {"norway", "NO"}, {"oman", "OM"}, {"pakistan", "PK"}, {"palestine", "PS"},
        {"panama", "PA"}, {"papua new guinea", "PG"}, {"paraguay", "PY"},
        {"peru", "PE"}, {"philippines", "PH"}, {"poland", "PL"},
        {"portugal", "PT"}, {"puerto rico", "PR"}, {"qatar", "QA"},
        {"romania", "RO"}, {"russia", "RU"}, {"russian federation", "RU"},
        {"rwanda", "RW"}, {"san marino", "SM"}, {"saudi arabia", "SA"},
        {"senegal", "SN"}, {"serbia", "RS"}, {"seychelles", "SC"},
        {"sierra leone", "SL"}, {"singapore", "SG"}, {"slovakia", "SK"},
        {"slovenia", "SI"}, {"somalia", "SO"}, {"south africa", "ZA"},
        {"south korea", "KR"}, {"korea", "KR"}, {"republic of korea", "KR"},
        {"south sudan", "SS"}, {"spain", "ES"}, {"sri lanka", "LK"},
        {"sudan", "SD"}, {"suriname", "SR"}, {"sweden", "SE"},
        {"switzerland", "CH"}, {"syria", "SY"}, {"taiwan", "TW"},
        {"tajikistan", "TJ"}, {"tanzania", "TZ"}, {"thailand", "TH"},
        {"togo", "TG"}, {"trinidad and tobago", "TT"}, {"trinid & tobago", "TT"},
        {"tunisia", "TN"}, {"turkey", "TR"}, {"turkiye", "TR"},
        {"turkmenistan", "TM"}, {"uganda", "UG"}, {"ukraine", "UA"},
        {"united arab emirates", "AE"}, {"u arab emirates", "AE"},
        {"united kingdom", "GB"}, {"great britain", "GB"}, {"england", "GB"},
        {"scotland", "GB"}, {"wales", "GB"}, {"north ireland", "GB"},
        {"northern ireland", "GB"}, {"uk", "GB"}, {"united states", "US"},
        {"united states of america", "US"}, {"usa", "US"}, {"uruguay", "UY"},
        {"uzbekistan", "UZ"}, {"vatican", "VA"}, {"vatican city", "VA"},
        {"venezuela", "VE"}, {"vietnam", "VN"}, {"viet nam", "VN"},
        {"yemen", "YE"}, {"zambia", "ZM"}, {"zimbabwe", "ZW"},
    };
    for (const auto& [name, code] : rows) t.emplace(name, code);
    return t;
  }();
  return table;
}

}  // namespace

std::string normalize_city(std::string_view raw) { return fold_text(raw); }

std::string normalize_author_key(std::string_view raw) { return fold_text(raw); }

std::optional<std::string> normalize_country(std::string_view raw) {
  std::string folded = fold_text(raw);
  std::erase(folded, '.');
  if (folded.empty()) return std::nullopt;
  const auto& names = country_names();
  if (auto it = names.find(folded); it != names.end()) return it->second;
  if (folded.size() == 2 && std::isalpha(static_cast<unsigned char>(folded[0])) &&
      std::isalpha(static_cast<unsigned char>(folded[1]))) {
    std::string code = folded;
    for (auto& c : code) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return code;
  }
  return std::nullopt;
}

std::optional<Address> normalize_address(std::string_view raw_city,
                                         std::string_view raw_country) {
  Address a;
  a.city = normalize_city(raw_city);
  if (a.city.empty()) return std::nullopt;
  auto country = normalize_country(raw_country);
  if (!country) return std::nullopt;
  a.country = std::move(*country);
  return a;
}

}  // namespace kspill
