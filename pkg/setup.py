from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name='mobiusladder',
    version='0.1.0',
    packages=find_packages(),
    install_requires=[
        'numpy>=1.17,<2',
        'scipy>=1.3,<2'
    ],
    entry_points={
        'console_scripts': [
            'mobiusladder = mobiusladder.cli:main',
        ],
    },
    python_requires='>=3.7',
    description='Tight-binding spectra, transport and dynamics of Moebius ladder rings.',
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='Apache Software License v2.0',
    classifiers=[
        'License :: OSI Approved :: Apache Software License',
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
    ],
)
