#ifndef POLYAGEV_ERRORS_HPP
#define POLYAGEV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyagev {

enum class errc {
  domain,
  singular,
  singular_system,
  index_out_of_range,
  insufficient_data,
  negative_beta,
  no_geometric_decay,
  uncertified,
  grid_too_coarse,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::domain: return "DOMAIN";
    case errc::singular: return "SINGULAR";
    case errc::singular_system: return "SINGULAR_SYSTEM";
    case errc::index_out_of_range: return "INDEX_OUT_OF_RANGE";
    case errc::insufficient_data: return "INSUFFICIENT_DATA";
    case errc::negative_beta: return "NEGATIVE_BETA";
    case errc::no_geometric_decay: return "NO_GEOMETRIC_DECAY";
    case errc::uncertified: return "UNCERTIFIED";
    case errc::grid_too_coarse: return "GRID_TOO_COARSE";
  }
  return "UNKNOWN";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace polyagev

#endif
