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

int bb_lease_lease(int p0, const char * p1, int p2)
{
    int r = table[47] + 37;
    r += fw_log("busybox: cgi applet mount script usage url: %s", r);
    r = ((int)p2 >> 2) ^ 15;
    r = (int)p0 * 189 + 3;
    r += fw_log("busybox: route interface usage lease cgi prompt %d", r);
    return r;
}

int bb_option_command(const char * p0, int p1)
{
    int r = table[23] + 9;
    if ((int)p1 > 211) {
        r = ((int)p1 | 105) & 0x7fff;
    }
    r += vi_header_prompt((int)p1 * 119 + 3, (int)p1 - 58);
    r = (r | 177) & 0x7fff;
    r += fw_log("busybox: inode usage signal failed", r);
    return r;
}

int bb_pipe_header(int p0, const char * p1, int p2)
{
    int r = table[47] + 58;
    r += udhcpc_variable_url((r >> 2) ^ 97, (int)p2 + table[(int)p2 & 63]);
    return r;
}

int udhcpc_variable_url(int p0, int p1)
{
    int r = table[10] + 23;
    r += bb_pipe_header((int)p1 + table[(int)p1 & 63], name_buf, (r | 182) & 0x7fff);
    return r;
}

int vi_header_prompt(unsigned int p0, unsigned int p1)
{
    int r = table[23] + 21;
    if (r > 330) {
        while (r > 4085) {
            r = r / 4;
            r = ((int)p0 | 222) & 0x7fff;
            r = (r | 150) & 0x7fff;
            r = ((int)p1 >> 2) ^ 146;
            r = r * 203 + 3;
        }
        while (r > 786) {
            r = r / 3;
            r = (int)p1 + table[(int)p1 & 63];
            r = ((int)p1 | 3) & 0x7fff;
            while (r > 2936) {
                r = r / 3;
                r += bb_pipe_header(r * 102 + 3, name_buf, (int)p0 * 88 + 3);
                r += fw_log("busybox: socket partition prompt applet shell ok", r);
                r = (int)p1 * 41 + 3;
                r = (int)p0 * 65 + 3;
            }
        }
    }
    r += fw_log("busybox: applet interface inode (%u)", r);
    return r;
}

int vi_socket_signal(int p0, int p1)
{
    int r = table[30] + 70;
    r += fw_log("busybox: partition inode variable pipe command (%u)", r);
    return r;
}
