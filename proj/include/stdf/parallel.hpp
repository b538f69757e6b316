#pragma once

namespace stdf {

int max_threads();
void set_max_threads(int n);

}  // namespace stdf
