#include <stdio.h>
#include <string.h>
#include "hyperherm.h"

int main(void) {
    HhReport *rep = NULL;
    if (hh_analyze("1,0,0,0", &rep) != HH_STATUS_OK) return 1;
    char *tau = NULL;
    if (hh_report_tau(rep, &tau) != HH_STATUS_OK) return 2;
    int ok = strcmp(tau, "-3/2") == 0;
    hh_string_free(tau);
    bool iso = true;
    hh_report_isotropic_hyper(rep, &iso);
    hh_report_free(rep);
    if (!ok || iso) return 3;
    if (hh_analyze("1,2", &rep) != HH_STATUS_USAGE) return 4;
    if (strlen(hh_last_error()) == 0) return 5;
    puts("ok");
    return 0;
}
