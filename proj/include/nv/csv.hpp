#pragma once

#include <cstdio>
#include <ostream>
#include <string>

namespace nv {

// All numeric output carries 17 significant digits so runs are bit-exactly
// reproducible from the CSV alone.
inline std::string csv_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    template <class... Cols>
    void header(Cols&&... cols) {
        bool first = true;
        ((os_ << (first ? "" : ","), os_ << cols, first = false), ...);
        os_ << "\n";
    }

    void begin_row() { first_ = true; }
    void end_row() { os_ << "\n"; }

    CsvWriter& col(double x) {
        sep();
        os_ << csv_num(x);
        return *this;
    }
    CsvWriter& col(int x) {
        sep();
        os_ << x;
        return *this;
    }
    CsvWriter& col(const std::string& s) {
        sep();
        os_ << s;
        return *this;
    }

  private:
    void sep() {
        if (!first_) os_ << ",";
        first_ = false;
    }
    std::ostream& os_;
    bool first_ = true;
};

}  // namespace nv
