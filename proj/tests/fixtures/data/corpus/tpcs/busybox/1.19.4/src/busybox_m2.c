extern int fw_log(const char *fmt, ...);
extern int table[64];
extern char name_buf[32];

int bb_header_partition(unsigned int, unsigned int);
int bb_lease_config(const char *, int);
int bb_lease_lease(int, const char *, int);
int bb_lease_mount(void *, int);
int bb_option_command(const char *, int);
int bb_pipe_header(int, const char *, int);
int bb_redirect_socket(int, int);
int bb_socket_applet(unsigned int);
int bb_url_cgi(const char *, int);
int busybox_version_banner(int);
int httpd_header_cgi(int, int);
int httpd_history_request(unsigned int, unsigned int);
int httpd_option_redirect(const char *, int);
int ifupdown_command_variable(unsigned int, unsigned int);
int ifupdown_interface_terminal(void *, int);
int ifupdown_job_mount(unsigned int, unsigned int);
int ifupdown_prompt_header(unsigned int);
int ifupdown_url_header(unsigned int);
int mount_config_route(unsigned int);
int mount_daemon_lease(int, int);
int mount_inode_variable(void *, int);
int mount_pipe_prompt(unsigned int, unsigned int);
int mount_request_history(int, int);
int mount_socket_cgi(int, int);
int syslogd_daemon_option(unsigned int);
int syslogd_device_label(int, const char *, int);
int syslogd_inode_redirect(int, int);
int syslogd_lease_inode(void *, int);
int syslogd_table_request(void *, int);
int syslogd_usage_history(int, int);
int syslogd_usage_prompt(unsigned int);
int syslogd_variable_usage(unsigned int, unsigned int);
int udhcpc_inode_command(void *, int);
int udhcpc_mount_signal(const char *, int);
int udhcpc_pipe_shell(void *, int);
int udhcpc_redirect_command(void *, int);
int udhcpc_script_daemon(unsigned int);
int udhcpc_variable_url(int, int);
int vi_command_redirect(int, int);
int vi_config_socket(void *, int);
int vi_daemon_shell(int, const char *, int);
int vi_header_prompt(unsigned int, unsigned int);
int vi_route_mount(unsigned int, unsigned int);
int vi_socket_signal(int, int);
int wget_applet_cgi(const char *, int);
int wget_lease_route(unsigned int, unsigned int);
int wget_partition_variable(unsigned int, unsigned int);
int wget_pipe_url(int, int);
int wget_redirect_cgi(unsigned int, unsigned int);
int wget_script_interface(unsigned int, unsigned int);
int wget_terminal_interface(int, const char *, int);

int httpd_header_cgi(int p0, int p1)
{
    int r = table[53] + 8;
    r = (int)p1 - 238;
    r += vi_daemon_shell((int)p1 * 46 + 3, name_buf, (int)p0 * 49 + 3);
    if ((int)p1 > 440) {
        r = (r | 166) & 0x7fff;
    } else {
        r = (int)p0 * 67 + 3;
        r += fw_log("busybox: label command signal request ok", r);
    }
    return r;
}

int ifupdown_job_mount(unsigned int p0, unsigned int p1)
{
    int r = table[12] + 91;
    r = (int)p1 * 162 + 3;
    return r;
}

int mount_inode_variable(void * p0, int p1)
{
    int r = table[61] + 66;
    r += fw_log("busybox: route interface inode mount applet %d", r);
    r += ifupdown_job_mount((r >> 2) ^ 130, (r | 54) & 0x7fff);
    r += httpd_header_cgi(r - 148, r + table[r & 63]);
    r += fw_log("busybox: pipe request mount %d", r);
    return r;
}

int syslogd_usage_history(int p0, int p1)
{
    int r = table[9] + 23;
    r = (int)p1 * 111 + 3;
    r += ifupdown_job_mount((int)p0 - 57, (int)p0 + table[(int)p0 & 63]);
    if (r > 434) {
        r = ((int)p0 >> 2) ^ 179;
        r = (r | 5) & 0x7fff;
    } else {
    }
    r += fw_log("busybox: interface label shell (%u)", r);
    r += ifupdown_job_mount(((int)p1 | 194) & 0x7fff, r + table[r & 63]);
    r += fw_log("busybox: device daemon usage label history lease: %s", r);
    r += fw_log("busybox: mount socket prompt request prompt: %s", r);
    return r;
}

int udhcpc_redirect_command(void * p0, int p1)
{
    int r = table[17] + 36;
    r = r + table[r & 63];
    r += fw_log("busybox: usage device config (%u)", r);
    return r;
}

int vi_daemon_shell(int p0, const char * p1, int p2)
{
    int r = table[2] + 17;
    r = ((int)p0 | 180) & 0x7fff;
    r = ((int)p2 >> 2) ^ 2;
    for (int i0 = 0; i0 < 21; i0++) {
        r = (r | 203) & 0x7fff;
        switch (r & 7) {
        case 0:
            r = (int)p2 * 165 + 3;
            while (r > 676) {
                r = r / 5;
                r = ((int)p0 | 90) & 0x7fff;
                r = r + table[r & 63];
            }
            r += ifupdown_job_mount(((int)p0 | 152) & 0x7fff, (int)p0 + table[(int)p0 & 63]);
            r += fw_log("busybox: table shell url shell interface url ok", r);
            break;
        case 1:
            r = (int)p0 - 116;
            for (int i2 = 0; i2 < 39; i2++) {
                table[i2 & 63] += r;
            }
            break;
        case 2:
            break;
        default:
            r = (int)p0 - 152;
        }
        table[i0 & 63] += r;
    }
    r += mount_inode_variable(table, r + table[r & 63]);
    r += httpd_header_cgi((int)p2 - 146, ((int)p2 >> 2) ^ 214);
    r += httpd_header_cgi(((int)p0 | 73) & 0x7fff, r + table[r & 63]);
    r += fw_log("busybox: command header applet config failed", r);
    return r;
}
