app_name = "canard_lab"
app_title = "Canard Lab"
app_description = "Kahan and Euler discretizations of the planar canard normal form"

# Output
# ------
# significant digits used for every float written to CSV

csv_float_format = ".17g"
csv_config_prefix = "# config: "
csv_singular_prefix = "# singular at n="
