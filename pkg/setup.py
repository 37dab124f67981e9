from setuptools import setup, find_packages

with open("requirements.txt") as f:
	install_requires = [line for line in f.read().strip().split("\n") if line and not line.startswith("#")]

with open("dev-requirements.txt") as f:
	tests_require = [line for line in f.read().strip().split("\n") if line and not line.startswith("#")]

# get version from __version__ variable in canard_lab/__init__.py
from canard_lab import __version__ as version

setup(
	name="canard_lab",
	version=version,
	description="Kahan and Euler discretizations of the planar canard normal form",
	author="Canard Lab Contributors",
	author_email="",
	packages=find_packages(),
	zip_safe=False,
	include_package_data=True,
	python_requires=">=3.10",
	install_requires=install_requires,
	extras_require={"test": tests_require},
	entry_points={"console_scripts": ["canard-lab=canard_lab.commands:main"]},
)
