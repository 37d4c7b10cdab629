from setuptools import setup, find_packages

setup(
    name='gbmlab',
    version='0.1.0',
    description='gbmlab: clustering coefficients of the Geometric Block Model, sampled and in closed form.',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['tests']),
    package_data={'gbmlab': ['templates/*.j2']},
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
    keywords='random graphs geometric block model clustering coefficient monte carlo',
    python_requires='>=3.8',
    install_requires=[
        'Jinja2>=3.0',
        'numpy>=1.22',
        'scipy>=1.8',
    ],
    extras_require={
        'test': ['pytest>=7.0'],
    },
    entry_points={
        'console_scripts': ['gbm-lab=gbmlab.cli:main'],
    },
)
