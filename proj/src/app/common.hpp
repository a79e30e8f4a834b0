#pragma once

#include <exception>
#include <ostream>

#include "gcs/app/commands.hpp"

namespace gcs::app::detail {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 6;
  }
}

}  // namespace gcs::app::detail
