#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace nlslab::fft {

namespace {

// Plans are created once under a lock and executed with the new-array
// interface, which FFTW documents as thread safe.  FFTW_ESTIMATE keeps the
// chosen algorithm independent of timing so repeated runs are bit identical.
using Key = std::tuple<int, int, int, int>; // kind, a, b, sign

std::mutex plan_mutex;
std::map<Key, fftw_plan>& plans() {
    static std::map<Key, fftw_plan> p;
    return p;
}

fftw_plan get_plan(int kind, int a, int b, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    Key key{kind, a, b, sign};
    auto it = plans().find(key);
    if (it != plans().end()) return it->second;
    size_t total = size_t(a) * (kind == 0 ? 1 : b);
    fftw_complex* buf = fftw_alloc_complex(total);
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = nullptr;
    if (kind == 0) {
        p = fftw_plan_dft_1d(a, buf, buf, sign, flags);
    } else if (kind == 1) {
        p = fftw_plan_dft_2d(a, b, buf, buf, sign, flags);
    } else {
        int n = b;
        p = fftw_plan_many_dft(1, &n, a, buf, nullptr, 1, n, buf, nullptr, 1, n, sign, flags);
    }
    fftw_free(buf);
    plans()[key] = p;
    return p;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

void dft1(std::complex<double>* data, int n, int sign) {
    fftw_execute_dft(get_plan(0, n, 0, sign), as_fftw(data), as_fftw(data));
}

void dft2(std::complex<double>* data, int rows, int cols, int sign) {
    fftw_execute_dft(get_plan(1, rows, cols, sign), as_fftw(data), as_fftw(data));
}

void dft_rows(std::complex<double>* data, int n, int count, int sign) {
    fftw_execute_dft(get_plan(2, count, n, sign), as_fftw(data), as_fftw(data));
}

} // namespace nlslab::fft
