#include <string.h>

#include "trackpow/trackpow.h"

int trackpow_c_smoke(char const* session_path) {
  tp_session* s = NULL;
  tp_report*  r = NULL;
  int         rc = 0;
  if (tp_session_load(session_path, &s) != TP_OK) {
    return 1;
  }
  if (tp_orbit(s, "fib", "b", 2, &r) != TP_OK) {
    rc = 2;
  } else if (strcmp(tp_report_text(r), "fib^1(b) = a\nfib^2(b) = ab\n") != 0) {
    rc = 3;
  }
  tp_report_free(r);
  tp_session_free(s);
  return rc;
}
